"""Writes the synthetic 5-asset daily log-return series shipped in data/."""
import numpy as np

SEED = 20120430
DAYS = 1000
PERIODS_PER_YEAR = 252

mu_year = np.array([0.05, 0.08, 0.10, 0.13, 0.16])
vol_year = np.array([0.15, 0.20, 0.25, 0.30, 0.35])
corr = np.full((5, 5), 0.3) + 0.7 * np.eye(5)
cov_year = np.outer(vol_year, vol_year) * corr

rng = np.random.default_rng(SEED)
daily = rng.multivariate_normal(mu_year / PERIODS_PER_YEAR, cov_year / PERIODS_PER_YEAR, DAYS)

with open("data/synthetic5_log_returns.csv", "w") as f:
    f.write("ASSET_A,ASSET_B,ASSET_C,ASSET_D,ASSET_E\n")
    for row in daily:
        f.write(",".join(f"{v:.10f}" for v in row) + "\n")
