import numpy as np
from hardy_lib import apparatus, ladder, lhv

if __name__ == '__main__':
    visibility = 0.96

    for K in (1, 2):
        t_star, s_star = ladder.optimize_t(K)
        print("K={}: t*={:.4f}  S*={:.4f}  (LHV bound {})".format(K, t_star, s_star, lhv.lhv_max(K)))
        print("  angles [deg]:", ", ".join("{:.2f}".format(d) for d in ladder.ladder_angles(K, t_star).degrees()))

        report = apparatus.simulated_report(ladder.LadderConfig(K, t_star), np.pi, visibility, 10 ** 5, seed=0)
        for label, value, sigma in report.labelled_terms():
            print("  {:<12} {:.3f} +/- {:.3f}".format(label, value, sigma))
        print("  S_{} = {:.3f} +/- {:.3f}".format(K, report.s_value, report.uncertainties.s_value))

        t_cross = ladder.violation_threshold(K, visibility)
        print("  violation lost above t = {}".format("none" if t_cross is None else "{:.3f}".format(t_cross)))
