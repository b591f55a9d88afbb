"""Solver behavior over random consistent mitigation problems.

Draws random channels and states, generates z from the model itself so a
zero-residual solution exists, and reports how the projected-gradient
solver does: iterations, residuals, wall time. Useful as a quick health
check after touching the solver.
"""

import argparse
import sys
import time

import numpy as np

from coherent_readout.channels import random_channel
from coherent_readout.povm import effective_povm
from coherent_readout.readout import extract, forward
from coherent_readout.solver import MitigationProblem, SolverOptions, mitigate
from coherent_readout.states import decompose, random_density


def run_trials(n_problems, qubits, seed, tol):
    options = SolverOptions(residual_tol=tol)
    rows = []
    for i in range(n_problems):
        n = qubits[i % len(qubits)]
        rng = np.random.default_rng(seed + i)
        ch = random_channel(2**n, int(rng.integers(2, 6)), seed=seed + i)
        model = extract(effective_povm(ch))
        truth = decompose(random_density(n, seed + 10_000 + i).matrix)
        z = forward(model, truth)

        start = time.perf_counter()
        res = mitigate(MitigationProblem(model=model, z_observed=z), options)
        rows.append(
            {
                "qubits": n,
                "residual": res.residual,
                "iterations": res.iterations,
                "converged": res.converged,
                "seconds": time.perf_counter() - start,
            }
        )
    return rows


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--problems", type=int, default=50)
    parser.add_argument("--qubits", type=int, nargs="+", default=[1, 2])
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--tol", type=float, default=1e-9)
    args = parser.parse_args(argv)
    if args.problems < 1:
        parser.error("--problems must be >= 1")
    if any(n < 1 for n in args.qubits):
        parser.error("--qubits entries must be >= 1")

    rows = run_trials(args.problems, args.qubits, args.seed, args.tol)

    converged = [r for r in rows if r["converged"]]
    residuals = np.array([r["residual"] for r in rows])
    iters = np.array([r["iterations"] for r in rows])
    total_time = sum(r["seconds"] for r in rows)

    print(f"problems            {len(rows)}")
    print(f"converged           {len(converged)}/{len(rows)}")
    print(f"residual max        {residuals.max():.3e}")
    print(f"residual median     {np.median(residuals):.3e}")
    print(f"iterations max      {iters.max()}")
    print(f"iterations median   {np.median(iters):.0f}")
    print(f"total solve time    {total_time:.2f} s")
    return 0 if len(converged) == len(rows) else 1


if __name__ == "__main__":
    sys.exit(main())
