#!/usr/bin/env python3
"""Tabulate g(gamma) = lambda_min(gamma J - (JA + A^T J)) for one matrix.

    python scripts/gamma_profile.py A.csv --points 41

Shows the concave profile the membership oracle maximises, with the
golden-section optimum marked.
"""

import argparse

import numpy as np

from conez.matrix_io import read_matrix
from conez.z_operators import g_value, z_oracle_lorentz


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("matrix")
    ap.add_argument("--points", type=int, default=41)
    ap.add_argument("--halfwidth", type=float, default=None, help="default: 3 |gamma*| + 3")
    args = ap.parse_args()

    A = read_matrix(args.matrix)
    cert = z_oracle_lorentz(A)
    hw = args.halfwidth or 3 * abs(cert.gamma_star) + 3
    grid = np.linspace(cert.gamma_star - hw, cert.gamma_star + hw, args.points)
    values = [g_value(A, gam) for gam in grid]
    top, bottom = max(values), min(values)
    span = (top - bottom) or 1.0
    for gam, g in zip(grid, values):
        bar = "#" * int(40 * (g - bottom) / span)
        print(f"{gam:+12.5f}  {g:+12.5e}  {bar}")
    verdict = "member" if cert.member else "not a member"
    print(f"gamma* = {cert.gamma_star:.12g}, g(gamma*) = {cert.lambda_min_at_star:.6e} -> {verdict}")


if __name__ == "__main__":
    main()
