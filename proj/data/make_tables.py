#!/usr/bin/env python3
"""Regenerate the attenuation CSV tables in this directory.

Anchor values are total mass attenuation coefficients (with coherent
scattering) from the NIST standard reference tables of Hubbell & Seltzer
(https://physics.nist.gov/PhysRefData/XrayMassCoef/), tabulated at the
standard grid energies. Intermediate energies are filled in by log-log
interpolation, which is accurate away from absorption edges; none of the
materials here has an edge above 10 keV. Calcium chloride is built from
the elemental Ca/Cl tables with the mass-fraction mixture rule.
"""

import math

ANCHOR_KEV = [10, 15, 20, 30, 40, 50, 60, 80, 100, 150]

# material -> (density g/cm3, MAC cm2/g at ANCHOR_KEV)
TABLES = {
    "water": (1.000, [5.329, 1.673, 0.8096, 0.3756, 0.2683,
                      0.2269, 0.2059, 0.1837, 0.1707, 0.1505]),
    "adipose": (0.950, [3.258, 1.064, 0.5465, 0.2894, 0.2274,
                        0.2022, 0.1882, 0.1716, 0.1609, 0.1431]),
    "muscle": (1.050, [5.356, 1.693, 0.8205, 0.3783, 0.2685,
                       0.2262, 0.2048, 0.1823, 0.1693, 0.1492]),
    "cortical_bone": (1.920, [28.51, 9.032, 4.001, 1.331, 0.6655,
                              0.4242, 0.3148, 0.2229, 0.1855, 0.1480]),
    "air": (0.001205, [5.120, 1.614, 0.7779, 0.3538, 0.2485,
                       0.2080, 0.1875, 0.1662, 0.1541, 0.1356]),
    "aluminum": (2.699, [26.23, 7.955, 3.441, 1.128, 0.5685,
                         0.3681, 0.2778, 0.2018, 0.1704, 0.1378]),
}

# Elemental anchors for the CaCl2 mixture (same source).
CALCIUM = [93.41, 30.32, 13.06, 4.080, 1.830,
           1.019, 0.6578, 0.3656, 0.2569, 0.1649]
CHLORINE = [57.25, 18.42, 7.870, 2.426, 1.093,
            0.6080, 0.4057, 0.2433, 0.1858, 0.1350]
W_CA = 40.078 / 110.984
W_CL = 2 * 35.453 / 110.984
TABLES["calcium_chloride"] = (
    2.150, [W_CA * ca + W_CL * cl for ca, cl in zip(CALCIUM, CHLORINE)])

OUT_KEV = list(range(10, 151, 5))


def loglog_interp(e, xs, ys):
    if e <= xs[0]:
        return ys[0]
    if e >= xs[-1]:
        return ys[-1]
    for i in range(len(xs) - 1):
        if xs[i] <= e <= xs[i + 1]:
            t = (math.log(e) - math.log(xs[i])) / \
                (math.log(xs[i + 1]) - math.log(xs[i]))
            return math.exp(math.log(ys[i]) * (1 - t) + math.log(ys[i + 1]) * t)
    raise ValueError(e)


def main():
    for name, (density, macs) in sorted(TABLES.items()):
        with open(f"{name}.csv", "w") as f:
            f.write(f"# material: {name}\n")
            f.write(f"# density_g_cm3: {density}\n")
            f.write("energy_keV,mac_cm2_g\n")
            for e in OUT_KEV:
                mac = loglog_interp(float(e), ANCHOR_KEV, macs)
                f.write(f"{e},{mac:.6g}\n")
        print(f"wrote {name}.csv")


if __name__ == "__main__":
    main()
