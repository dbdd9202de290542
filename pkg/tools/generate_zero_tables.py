"""Generate the vendored zero-ordinate tables.

Writes three text files into src/primelab/data/:

  zeta_zeros.txt  -- first 2000 ordinates of zeta, via Riemann-Siegel Z
  chi4_zeros.txt  -- ordinates of L(s, chi_-4) up to height 620
  chi5_zeros.txt  -- ordinates of L(s, chi_5)  up to height 620

Each zero is located by a sign change on a fine grid followed by Brent
refinement.  Completeness is cross-checked against the Riemann-von Mangoldt
style counting formula; a drift larger than ~2.5 means a missed pair and
aborts the run.

One-time data generation; not part of the installed package.
"""

import math
import os
import time

from mpmath import mp, siegelz
from scipy.optimize import brentq

mp.dps = 18

OUT = os.path.join(os.path.dirname(__file__), "..", "src", "primelab", "data")

ZETA_COUNT = 2000
CHAR_HEIGHT = 620.0


def find_zeros(fun, t_lo, t_hi, step, label, expected=None, max_zeros=None):
    zeros = []
    t = t_lo
    prev_t = t
    prev_v = fun(t)
    n_grid = int(math.ceil((t_hi - t_lo) / step))
    t0 = time.time()
    for i in range(1, n_grid + 1):
        t = t_lo + i * step
        v = fun(t)
        if prev_v == 0.0:
            zeros.append(prev_t)
        elif v != 0.0 and (v < 0) != (prev_v < 0):
            root = brentq(fun, prev_t, t, xtol=1e-10, rtol=1e-14)
            zeros.append(root)
            if max_zeros and len(zeros) >= max_zeros:
                break
        prev_t, prev_v = t, v
        if i % 2000 == 0:
            print(f"  {label}: t={t:.1f}, {len(zeros)} zeros, "
                  f"{time.time() - t0:.0f}s", flush=True)
        if expected is not None and i % 500 == 0:
            drift = abs(len(zeros) - expected(t))
            if drift > 2.5:
                raise RuntimeError(
                    f"{label}: count drift {drift:.2f} at t={t:.2f}; "
                    f"grid step {step} too coarse")
    return zeros


def nzeros_zeta(t):
    # positive-ordinate count, main terms of the Riemann-von Mangoldt formula
    if t < 2:
        return 0.0
    return t / (2 * math.pi) * math.log(t / (2 * math.pi * math.e)) + 7.0 / 8


def nzeros_dirichlet(q, t):
    # positive-ordinate count for a primitive character mod q, main term
    if t < 1:
        return 0.0
    return t / (2 * math.pi) * math.log(q * t / (2 * math.pi * math.e))


def dirichlet_xi(q, residues_plus, residues_minus, parity):
    """Completed L-function on the critical line; real for real characters
    with root number +1 (true for chi_-4 and chi_5)."""
    a = parity  # 0 even, 1 odd
    qm = mp.mpf(q)

    def xi(t):
        s = mp.mpc(0.5, t)
        L = mp.power(qm, -s) * (
            sum(mp.zeta(s, mp.mpf(r) / q) for r in residues_plus)
            - sum(mp.zeta(s, mp.mpf(r) / q) for r in residues_minus))
        val = mp.power(qm / mp.pi, (s + a) / 2) * mp.gamma((s + a) / 2) * L
        return float(val.real)

    return xi


def write_table(path, zeros, header_lines):
    with open(path, "w") as fh:
        for line in header_lines:
            fh.write("# " + line + "\n")
        for z in zeros:
            fh.write(f"{z:.9f}\n")
    print(f"wrote {path}: {len(zeros)} ordinates, last {zeros[-1]:.4f}",
          flush=True)


def main():
    t0 = time.time()

    print("zeta zeros ...", flush=True)
    zz = find_zeros(lambda t: float(siegelz(t)), 10.0, 2600.0, 0.05,
                    "zeta", expected=nzeros_zeta, max_zeros=ZETA_COUNT)
    assert len(zz) == ZETA_COUNT, len(zz)
    assert abs(zz[0] - 14.134725) < 1e-5, zz[0]
    write_table(os.path.join(OUT, "zeta_zeros.txt"), zz,
                [f"first {ZETA_COUNT} ordinates of the nontrivial zeros of "
                 "the Riemann zeta function",
                 "generated by tools/generate_zero_tables.py "
                 "(Riemann-Siegel Z sign changes + Brent refinement)",
                 f"complete for 0 < gamma <= {math.floor(zz[-1]*10)/10:.1f}"])

    print("chi_-4 zeros ...", flush=True)
    xi4 = dirichlet_xi(4, [1], [3], parity=1)
    z4 = find_zeros(xi4, 0.5, CHAR_HEIGHT, 0.1, "chi4",
                    expected=lambda t: nzeros_dirichlet(4, t))
    assert abs(z4[0] - 6.0209) < 2e-3, z4[0]
    write_table(os.path.join(OUT, "chi4_zeros.txt"), z4,
                ["ordinates of the nontrivial zeros of L(s, chi_-4) "
                 "(odd real primitive character mod 4)",
                 "generated by tools/generate_zero_tables.py",
                 f"complete for 0 < gamma <= {CHAR_HEIGHT}"])

    print("chi_5 zeros ...", flush=True)
    xi5 = dirichlet_xi(5, [1, 4], [2, 3], parity=0)
    z5 = find_zeros(xi5, 0.5, CHAR_HEIGHT, 0.1, "chi5",
                    expected=lambda t: nzeros_dirichlet(5, t))
    write_table(os.path.join(OUT, "chi5_zeros.txt"), z5,
                ["ordinates of the nontrivial zeros of L(s, chi_5) "
                 "(even real primitive character mod 5, Legendre symbol)",
                 "generated by tools/generate_zero_tables.py",
                 f"complete for 0 < gamma <= {CHAR_HEIGHT}"])

    print(f"done in {time.time() - t0:.0f}s", flush=True)


if __name__ == "__main__":
    main()
