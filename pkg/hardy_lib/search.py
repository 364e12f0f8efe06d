import logging
import numpy as np

logger = logging.getLogger(__name__)

INV_PHI = (np.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - np.sqrt(5)) / 2  # 1 / phi^2


def golden_section_max(function, lower: float, upper: float, tolerance=1e-6) -> tuple:
    """
    Golden-section search for the maximum of a unimodal function on [lower, upper].

    The iteration count is fixed by the tolerance, so identical inputs always take
    identical steps.
    return: (x_max, f(x_max))
    """
    assert lower < upper
    width = upper - lower
    if width <= tolerance:
        x = (lower + upper) / 2
        return x, function(x)

    iterations = int(np.ceil(np.log(tolerance / width) / np.log(INV_PHI)))
    c = lower + INV_PHI_SQUARE * width
    d = lower + INV_PHI * width
    yc = function(c)
    yd = function(d)

    for _ in range(iterations):
        if yc > yd:
            upper = d
            d, yd = c, yc
            width *= INV_PHI
            c = lower + INV_PHI_SQUARE * width
            yc = function(c)
        else:
            lower = c
            c, yc = d, yd
            width *= INV_PHI
            d = lower + INV_PHI * width
            yd = function(d)

    logger.debug("golden section bracket [%r, %r] after %d iterations", lower, upper, iterations)
    if yc > yd:
        return c, yc
    return d, yd


def bisect_sign_change(function, positive: float, nonpositive: float, tolerance=1e-4) -> float:
    """
    Shrink a bracket with function(positive) > 0 >= function(nonpositive).

    return: the nonpositive end once the bracket is narrower than tolerance
    """
    assert function(positive) > 0 >= function(nonpositive)
    while abs(nonpositive - positive) > tolerance:
        middle = (positive + nonpositive) / 2
        if function(middle) > 0:
            positive = middle
        else:
            nonpositive = middle
    logger.debug("sign change bracketed in [%r, %r]", positive, nonpositive)
    return nonpositive
