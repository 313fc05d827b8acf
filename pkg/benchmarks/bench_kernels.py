"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Prints the best-of-N wall time per kernel for each available backend and
the speed-up of the compiled one.
"""

import argparse
import timeit

import numpy as np

from twoatom import _pykernels

try:
    from twoatom import _ckernels
except ImportError:
    _ckernels = None

FIG11 = (10.0, 26.22, 0.97)


def cases(k):
    rng = np.random.default_rng(0)
    x = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    herm = x + x.conj().T
    z = rng.normal(size=15) + 1j * rng.normal(size=15)
    z0 = np.zeros(15, dtype=complex)
    grid = np.linspace(0.0, 20.0, 201)
    return {
        "jacobi_eigh (4x4)": (lambda: k.jacobi_eigh(herm), 200),
        "master_rhs": (lambda: k.master_rhs(z, *FIG11, 1.0), 2000),
        "integrate_master (t=20)": (
            lambda: k.integrate_master(z0, *FIG11, 1.0, grid, 1e-9, 1e-9, 10**7),
            1,
        ),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    backends = {"python": _pykernels}
    if _ckernels is not None:
        backends["compiled"] = _ckernels
    else:
        print("compiled kernels not built; timing the Python fallback only")

    results = {}
    for label, mod in backends.items():
        for name, (fn, number) in cases(mod).items():
            best = min(timeit.repeat(fn, number=number, repeat=args.repeat)) / number
            results[(label, name)] = best

    names = list(cases(_pykernels))
    print(f"{'kernel':28s} {'python':>12s} {'compiled':>12s} {'speed-up':>9s}")
    for name in names:
        py = results[("python", name)]
        comp = results.get(("compiled", name))
        if comp is None:
            print(f"{name:28s} {py * 1e6:10.1f}us {'-':>12s} {'-':>9s}")
        else:
            print(f"{name:28s} {py * 1e6:10.1f}us {comp * 1e6:10.1f}us {py / comp:8.1f}x")


if __name__ == "__main__":
    main()
