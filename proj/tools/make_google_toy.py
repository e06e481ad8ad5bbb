"""Writes a small synthetic slice in the Google cluster-trace task_usage layout.

Three machines, three days of 5-minute measurement windows, two or three tasks
per machine and window. Columns: start_us, end_us, job_id, task_index,
machine_id, cpu_rate. Rates of one window sum to the machine's CPU usage.
Deterministic for a given seed.
"""

import argparse
import math
import random

WINDOW_US = 300 * 1_000_000
START_US = 600 * 1_000_000
WINDOWS = 3 * 24 * 12

# machine id -> (mean usage, daily swing, spike probability)
MACHINES = {
    "4155527081": (0.14, 0.06, 0.010),
    "329150663": (0.20, 0.08, 0.015),
    "1436333635": (0.11, 0.05, 0.008),
}


def machine_usage(rng, mean, swing, spike, window):
    phase = 2.0 * math.pi * window / (24 * 12)
    u = mean + swing * math.sin(phase) + rng.gauss(0.0, 0.03)
    if rng.random() < spike:
        u += rng.uniform(0.3, 0.6)
    return min(max(u, 0.0), 1.0)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=2011)
    parser.add_argument("--out", required=True)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    rows = []
    for w in range(WINDOWS):
        start = START_US + w * WINDOW_US
        for job_base, (machine, params) in enumerate(MACHINES.items()):
            total = machine_usage(rng, *params, w)
            n_tasks = rng.choice((2, 3))
            cuts = sorted(rng.random() for _ in range(n_tasks - 1))
            shares = [b - a for a, b in zip([0.0] + cuts, cuts + [1.0])]
            for task, share in enumerate(shares):
                job = 6_250_000_000 + 1000 * job_base + task
                rows.append(f"{start},{start + WINDOW_US},{job},{task},{machine},{total * share:.6f}")

    with open(args.out, "w") as f:
        f.write("\n".join(rows) + "\n")


if __name__ == "__main__":
    main()
