#!/usr/bin/env python3
"""Generate the bundled replica maps under data/maps.

Each map is a 10 m x 10 m grid at 0.1 m resolution that starts fully
occupied; the rectangles listed below (xmin, ymin, xmax, ymax) are carved
free, then `blocks` are filled back in. Run from the repository root.
"""

import random
from pathlib import Path

RES = 0.1
SIZE = 100

MAPS = {
    # corridor maze with rooms
    "de": {
        "free": [
            (0.4, 6.8, 5.0, 8.0),   # entry corridor, runs west from the start
            (0.4, 4.2, 1.6, 8.0),   # first drop south
            (0.4, 4.2, 4.0, 5.4),   # eastward corridor
            (2.2, 1.0, 3.4, 5.4),   # second drop south
            (2.2, 1.0, 9.6, 2.2),   # bottom corridor
            (3.8, 8.0, 4.6, 8.6),   # door north of the entry corridor
            (3.8, 8.6, 9.6, 9.6),   # passage to the hall
            (5.6, 5.0, 9.6, 9.6),   # hall
            (5.0, 2.8, 9.6, 4.4),   # room above the bottom corridor
            (6.0, 2.2, 6.8, 2.8),   # its door
            (0.4, 0.4, 2.0, 4.2),   # store room west of the second drop
            (2.0, 2.6, 2.2, 3.4),   # its door
        ],
        "blocks": [(6.6, 6.6, 7.4, 7.4), (8.0, 7.6, 8.8, 8.4)],
    },
    # office aisles
    "os": {
        "free": [
            (6.4, 4.6, 7.6, 9.4),   # start aisle
            (3.4, 5.4, 7.6, 6.6),   # cross aisle heading west
            (4.4, 2.0, 5.6, 6.6),   # aisle south
            (1.0, 3.6, 5.6, 4.8),   # aisle west
            (2.2, 0.6, 3.4, 4.8),   # last aisle south
            (7.6, 8.0, 8.2, 8.8),   # door to the east office
            (8.2, 5.0, 9.6, 9.6),   # east office
            (3.4, 6.6, 4.2, 7.2),   # door to the meeting room
            (0.4, 7.2, 5.6, 9.6),   # meeting room
            (5.6, 2.4, 6.2, 3.2),   # door to the print room
            (6.2, 0.4, 9.6, 4.0),   # print room
        ],
        "blocks": [(1.2, 8.0, 2.0, 8.8), (3.0, 8.0, 4.6, 8.6), (7.0, 1.2, 8.6, 2.0)],
    },
    # random blocks
    "ro": {
        "free": [
            (0.2, 0.2, 9.8, 1.4),   # bottom lane
            (6.0, 1.4, 7.2, 4.6),   # lane north
            (0.2, 3.4, 6.0, 4.6),   # lane west
            (4.4, 4.6, 5.4, 7.4),   # narrow opening north
            (2.8, 4.6, 4.0, 9.4),   # wide opening north
            (7.6, 1.4, 9.8, 9.8),   # east field
            (0.2, 5.4, 2.6, 9.8),   # north-west field
            (0.8, 4.6, 2.0, 5.4),   # its entrance
        ],
        "fields": [((7.6, 1.8, 9.8, 9.8), 9), ((0.2, 5.8, 2.6, 9.8), 5)],
    },
    # building corridor
    "ubc": {
        "free": [
            (7.9, 0.6, 9.1, 8.4),
            (3.0, 7.2, 9.1, 8.4),
            (3.4, 5.2, 4.6, 8.4),
            (0.2, 5.2, 4.6, 6.4),
            (1.4, 4.6, 2.4, 5.2),   # door
            (0.2, 0.4, 6.0, 4.6),   # lab below the corridor
        ],
        "blocks": [(1.0, 1.0, 2.0, 2.0), (3.6, 2.0, 4.6, 3.6)],
    },
}


def inside(x, y, r):
    return r[0] <= x < r[2] and r[1] <= y < r[3]


def field_blocks(rect, count, rng):
    """Square 0.6 m blocks on a 0.2 m lattice inside `rect`."""
    out = []
    while len(out) < count:
        x = round(rng.uniform(rect[0] + 0.4, rect[2] - 1.0) / 0.2) * 0.2
        y = round(rng.uniform(rect[1] + 0.4, rect[3] - 1.0) / 0.2) * 0.2
        out.append((x, y, x + 0.6, y + 0.6))
    return out


def render(spec, rng):
    blocks = list(spec.get("blocks", []))
    for rect, count in spec.get("fields", []):
        blocks += field_blocks(rect, count, rng)
    rows = []
    for j in range(SIZE):
        y = (j + 0.5) * RES
        row = []
        for i in range(SIZE):
            x = (i + 0.5) * RES
            free = any(inside(x, y, r) for r in spec["free"])
            free = free and not any(inside(x, y, b) for b in blocks)
            row.append("0" if free else "1")
        rows.append("".join(row))
    return f"{SIZE} {SIZE} {RES} 0 0\n" + "\n".join(rows) + "\n"


def main():
    out = Path("data/maps")
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(2024)
    for name, spec in MAPS.items():
        (out / f"{name}.map").write_text(render(spec, rng))


if __name__ == "__main__":
    main()
