#!/usr/bin/env python3
"""Writes the case 4 scenario directory: a leeward valley opening to the west.

Layers are 100 x 100 cells of 2 m. Rows grow south, columns east.
  fuel.csv       integer burn-minutes per cell, from five LANDFIRE-like classes
  elevation.csv  metres
  resources.csv  value of each cell (0 outside protected areas)
  scenario.txt   key = value file read by the scenario loader

Output is a pure function of --seed.
"""

import argparse
from pathlib import Path

import numpy as np

N = 100

# Burn-minutes per fuel class.
FUEL_CLASSES = {
    "barren": 0,
    "developed": 3,
    "grass": 8,
    "shrub": 12,
    "forest": 16,
}

# Trade-wind rose: (direction the wind blows toward, degrees counterclockwise
# from east; strength; minute the phase ends). Winds come from the ENE.
WIND_PHASES = [
    (202.5, 0.7, 70),
    (225.0, 0.5, None),
]


def elevation(rng: np.random.Generator) -> np.ndarray:
    rows, cols = np.mgrid[0:N, 0:N].astype(float)
    axis_row = 52.0 + 6.0 * np.sin(cols / 18.0)       # valley floor meanders
    across = np.abs(rows - axis_row) / 50.0            # 0 on the floor, ~1 at the ridges
    up_valley = cols / (N - 1)                          # 0 at the mouth, 1 at the head
    z = 4.0 + 14.0 * up_valley + 26.0 * across**1.6 * (0.4 + 0.6 * up_valley)
    z += rng.normal(0.0, 0.35, size=z.shape)
    return np.round(z, 2)


def fuel(z: np.ndarray, resources: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    rows, cols = np.mgrid[0:N, 0:N].astype(float)
    up_valley = cols / (N - 1)
    relief = (z - z.min()) / (z.max() - z.min())
    f = np.full((N, N), FUEL_CLASSES["grass"])
    f[(up_valley > 0.45) & (relief < 0.75)] = FUEL_CLASSES["shrub"]
    f[(up_valley > 0.75) & (relief < 0.6)] = FUEL_CLASSES["forest"]
    f[relief > 0.9] = FUEL_CLASSES["barren"]
    f[resources > 0] = FUEL_CLASSES["developed"]
    # Patchy grass fingers reach into the shrub belt.
    patches = rng.random((N, N)) < 0.08
    f[patches & (f == FUEL_CLASSES["shrub"])] = FUEL_CLASSES["grass"]
    return f.astype(int)


def resources() -> np.ndarray:
    r = np.zeros((N, N))
    r[44:62, 2:14] = 10.0    # homes at the valley mouth
    r[30:40, 34:46] = 8.0    # resort and golf clubhouse
    r[66:72, 74:80] = 6.0    # water tank and pump station
    return r


def write_grid(path: Path, grid: np.ndarray, integer: bool) -> None:
    fmt = "%d" if integer else "%.2f"
    np.savetxt(path, grid, fmt=fmt, delimiter=",")


def write_keys(path: Path) -> None:
    lines = [
        "# Leeward valley opening west; trade winds from the ENE.",
        "spread_preset = moderate",
        "origin = 55,50",
        "ignition = 55,50; 55,51; 56,50; 56,51",
        "water_source = -1500,100",
    ]
    for i, (direction, strength, switch) in enumerate(WIND_PHASES):
        lines.append(f"wind.{i}.direction_deg = {direction}")
        lines.append(f"wind.{i}.strength = {strength}")
        lines.append(f"wind.{i}.switch_time = {'none' if switch is None else switch}")
    path.write_text("\n".join(lines) + "\n")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "data" / "case4")
    parser.add_argument("--seed", type=int, default=4)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    args.out.mkdir(parents=True, exist_ok=True)
    z = elevation(rng)
    r = resources()
    f = fuel(z, r, rng)
    write_grid(args.out / "elevation.csv", z, integer=False)
    write_grid(args.out / "resources.csv", r, integer=False)
    write_grid(args.out / "fuel.csv", f, integer=True)
    write_keys(args.out / "scenario.txt")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
