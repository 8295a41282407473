# Copyright (C) 2026 Speaking Images Authors
# SPDX-License-Identifier: Apache-2.0
"""Builds the reference embedding fixtures used by the evaluation tests.

Each fixture holds two embedding clouds whose sample statistics are shaped
so that the Frechet distance between them lands on a fixed reference value.
The construction whitens a random cloud exactly (its sample covariance
becomes the identity), recolors it with a diagonal covariance, and then
separates the means by exactly the distance still missing from the target.
Diagonal covariances commute, which keeps the symmetrized covariance
product positive semi-definite, matching the checks in the C++ scorer.
"""

import argparse
import json
import pathlib

import numpy as np


def frechet(a: np.ndarray, b: np.ndarray) -> float:
    """Replicates the C++ scorer: unbiased covariance, symmetrized product."""
    mu_a, mu_b = a.mean(axis=0), b.mean(axis=0)
    cov_a = np.cov(a, rowvar=False)
    cov_b = np.cov(b, rowvar=False)
    product = cov_a @ cov_b
    lam = np.linalg.eigvalsh((product + product.T) / 2.0)
    if lam.min() < -1e-8:
        raise ValueError("covariance product is not PSD")
    trace_sqrt = np.sqrt(np.clip(lam, 0.0, None)).sum()
    mean_term = float(((mu_a - mu_b) ** 2).sum())
    return mean_term + float(np.trace(cov_a) + np.trace(cov_b)) - 2.0 * trace_sqrt


def shaped_cloud(rng: np.random.Generator, n: int, variances: np.ndarray,
                 mean: np.ndarray) -> np.ndarray:
    """Returns an n x d cloud whose sample mean/covariance are exactly
    `mean` / diag(variances) (up to float rounding)."""
    d = variances.size
    raw = rng.standard_normal((n, d))
    raw -= raw.mean(axis=0)
    cov = np.cov(raw, rowvar=False)
    white = raw @ np.linalg.inv(np.linalg.cholesky(cov)).T
    return white * np.sqrt(variances) + mean


def build_fixture(name: str, target: float, seed: int, n: int = 64, d: int = 16) -> dict:
    rng = np.random.default_rng(seed)
    var_real = np.linspace(0.5, 2.0, d)
    var_gen = np.linspace(1.8, 0.7, d)
    trace_term = float(((np.sqrt(var_real) - np.sqrt(var_gen)) ** 2).sum())
    if trace_term >= target:
        raise ValueError("variance profiles already exceed the target")
    separation = np.sqrt(target - trace_term)

    mu_real = np.zeros(d)
    mu_gen = np.zeros(d)
    mu_gen[0] = separation

    real = shaped_cloud(rng, n, var_real, mu_real)
    gen = shaped_cloud(rng, n, var_gen, mu_gen)

    real = np.round(real, 12)
    gen = np.round(gen, 12)
    achieved = frechet(real, gen)
    if abs(achieved - target) > 1e-6:
        raise AssertionError(f"{name}: got {achieved!r}, wanted {target!r}")
    return {
        "name": name,
        "real": real.tolist(),
        "generated": gen.tolist(),
    }


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", type=pathlib.Path,
                        default=pathlib.Path(__file__).resolve().parent.parent / "data")
    args = parser.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)

    plans = [
        ("reference_fid", 293.67, 20260814, "fid_reference_embeddings.json"),
        ("reference_fvd", 295.806, 20260815, "fvd_reference_embeddings.json"),
    ]
    for name, target, seed, filename in plans:
        fixture = build_fixture(name, target, seed)
        path = args.out_dir / filename
        with path.open("w") as fh:
            json.dump(fixture, fh)
            fh.write("\n")
        print(f"{path}: frechet = {frechet(np.array(fixture['real']), np.array(fixture['generated'])):.10f}")


if __name__ == "__main__":
    main()
