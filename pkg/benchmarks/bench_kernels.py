"""Compare the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--sizes 16 32 64 128] [--repeat 3]
"""

import argparse
import timeit

import numpy as np

from qsteer import _backend, verify


def random_symmetric(n, seed=0):
    a = np.random.default_rng(seed).standard_normal((n, n))
    return np.ascontiguousarray(a + a.T)


def time_call(fn, repeat):
    number = 1
    while timeit.timeit(fn, number=number) < 0.2:
        number *= 2
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[16, 32, 64, 128])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    names = _backend.available()
    kernels = {name: _backend.load(name) for name in names}
    print(f"backends: {', '.join(names)} (default: {_backend.name})")
    print(f"{'case':<28}" + "".join(f"{name:>14}" for name in names) + f"{'speedup':>10}")
    for n in args.sizes:
        a = random_symmetric(n)
        diff = (verify.density_of_set(n, "+") - verify.density_of_set(n, "-")).entries
        x = np.random.default_rng(1).standard_normal(n)
        cases = {
            f"jacobi random n={n}": lambda k: k.jacobi_eigh(a, 1e-13 * np.linalg.norm(a), 100),
            f"jacobi rho+-rho- n={n}": lambda k: k.jacobi_eigh(diff, 1e-13, 100),
            f"rank1 update n={n}": lambda k: k.rank1_update(np.zeros((n, n)), x, 0.5),
            f"dot n={n}": lambda k: k.dot(x, x),
        }
        for label, case in cases.items():
            times = {name: time_call(lambda k=k: case(k), args.repeat) for name, k in kernels.items()}
            row = f"{label:<28}" + "".join(f"{times[name] * 1e3:>12.3f}ms" for name in names)
            if len(names) == 2:
                row += f"{times['python'] / times['compiled']:>9.1f}x"
            print(row)


if __name__ == "__main__":
    main()
