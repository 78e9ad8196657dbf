#!/usr/bin/env python3
"""Regenerates the canonical maps under maps/."""
import random
import sys
from collections import deque
from pathlib import Path

SEMI_RANDOM_SEED = 20240607


def bordered(w, h):
    return [[x in (1, w) or y in (1, h) for x in range(1, w + 1)] for y in range(1, h + 1)]


def render(walls, goal):
    h = len(walls)
    lines = []
    for y in range(h, 0, -1):
        row = ""
        for x in range(1, len(walls[0]) + 1):
            row += "G" if (x, y) == goal else ("#" if walls[y - 1][x - 1] else ".")
        lines.append(row)
    return "\n".join(lines) + "\n"


def set_wall(walls, x, y, value=True):
    walls[y - 1][x - 1] = value


def open_room():
    return bordered(10, 10), (9, 9)


def four_rooms():
    walls = bordered(11, 11)
    for i in range(1, 12):
        set_wall(walls, 6, i)
        set_wall(walls, i, 6)
    for x, y in [(6, 4), (6, 8), (4, 6), (8, 6)]:
        set_wall(walls, x, y, False)
    return walls, (10, 10)


def nine_rooms():
    walls = bordered(13, 13)
    for i in range(1, 14):
        for k in (5, 9):
            set_wall(walls, k, i)
            set_wall(walls, i, k)
    for k in (5, 9):
        for d in (3, 7, 11):
            set_wall(walls, k, d, False)
            set_wall(walls, d, k, False)
    return walls, (12, 12)


def connected(walls, goal):
    w, h = len(walls[0]), len(walls)
    free = {(x, y) for x in range(1, w + 1) for y in range(1, h + 1) if not walls[y - 1][x - 1]}
    seen = {goal}
    queue = deque([goal])
    while queue:
        x, y = queue.popleft()
        for n in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if n in free and n not in seen:
                seen.add(n)
                queue.append(n)
    return seen == free


def semi_random():
    rng = random.Random(SEMI_RANDOM_SEED)
    goal = (11, 11)
    interior = [(x, y) for y in range(2, 12) for x in range(2, 12) if (x, y) != goal]
    count = 20
    while True:
        walls = bordered(12, 12)
        for x, y in rng.sample(interior, count):
            set_wall(walls, x, y)
        if connected(walls, goal):
            return walls, goal


def main(out_dir):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, build in [("open_room", open_room), ("four_rooms", four_rooms), ("nine_rooms", nine_rooms),
                        ("semi_random", semi_random)]:
        walls, goal = build()
        (out / f"{name}.map").write_text(render(walls, goal))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "maps")
