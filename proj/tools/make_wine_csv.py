#!/usr/bin/env python3
# Builds data/wine.csv in the ODDS layout: cultivars 2 and 3 are normal,
# cultivar 1 is downsampled to 10 anomalies. Requires scikit-learn.
import csv
import sys

import numpy as np
from sklearn.datasets import load_wine


def main(out_path):
    data = load_wine()
    rng = np.random.default_rng(20240501)
    normal_idx = np.flatnonzero(data.target != 0)
    anomaly_idx = np.sort(rng.choice(np.flatnonzero(data.target == 0), 10, replace=False))
    rows = np.concatenate([normal_idx, anomaly_idx])
    header = [f"f{i}" for i in range(data.data.shape[1])] + ["label"]
    with open(out_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for r in rows:
            writer.writerow([repr(float(v)) for v in data.data[r]] + [int(data.target[r] == 0)])


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/wine.csv")
