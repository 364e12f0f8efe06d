import pytest

from hardy_lib import search


class TestGoldenSection:
    def test_parabola_maximum(self) -> None:
        x, y = search.golden_section_max(lambda x: -(x - 0.3) ** 2, 0., 1., tolerance=1e-7)
        assert x == pytest.approx(0.3, abs=1e-6)
        assert y == pytest.approx(0., abs=1e-12)

    def test_maximum_at_bracket_edge(self) -> None:
        x, _ = search.golden_section_max(lambda x: x, 0., 1., tolerance=1e-6)
        assert x == pytest.approx(1., abs=1e-6)

    def test_deterministic(self) -> None:
        f = lambda x: -(x - 0.123) ** 4
        assert search.golden_section_max(f, 0., 1.) == search.golden_section_max(f, 0., 1.)


class TestBisection:
    def test_linear_root(self) -> None:
        f = lambda x: 0.5 - x
        root = search.bisect_sign_change(f, 0.2, 0.9, tolerance=1e-4)
        assert root == pytest.approx(0.5, abs=1e-4)
        assert f(root) <= 0

    def test_bad_bracket_rejected(self) -> None:
        with pytest.raises(AssertionError):
            search.bisect_sign_change(lambda x: x - 0.5, 0.2, 0.9)
