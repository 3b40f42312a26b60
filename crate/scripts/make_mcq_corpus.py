"""Writes the fixed colored-graph corpus used by the acceptance suite.

Fifty graphs with three colors and at most three vertices per color: 25 with
a multicolored triangle and 25 without, every color pair sharing an edge.
Labels are certified here by brute force over vertex triples, independently
of the Rust code.
"""

import itertools
import pathlib
import random

OUT = pathlib.Path(__file__).resolve().parent.parent / "corpus" / "mcq"
PER_CLASS = 25


def draw(rng):
    sizes = [rng.randint(1, 3) for _ in range(3)]
    colors = [c for c, s in enumerate(sizes) for _ in range(s)]
    n = len(colors)
    density = rng.choice([0.3, 0.5, 0.7])
    edges = [
        (u, v)
        for u, v in itertools.combinations(range(n), 2)
        if colors[u] != colors[v] and rng.random() < density
    ]
    return colors, edges


def covered(colors, edges):
    pairs = {tuple(sorted((colors[u], colors[v]))) for u, v in edges}
    return pairs == {(0, 1), (0, 2), (1, 2)}


def has_triangle(colors, edges):
    adj = set(edges) | {(v, u) for u, v in edges}
    classes = [[v for v, c in enumerate(colors) if c == k] for k in range(3)]
    return any(
        (a, b) in adj and (b, c) in adj and (a, c) in adj
        for a in classes[0]
        for b in classes[1]
        for c in classes[2]
    )


def render(colors, edges, label):
    lines = [f"# multicolored triangle: {'yes' if label else 'no'}"]
    lines.append(f"p {len(colors)} {len(edges)}")
    lines += [f"c {v + 1} {c + 1}" for v, c in enumerate(colors)]
    lines += [f"e {u + 1} {v + 1}" for u, v in edges]
    return "\n".join(lines) + "\n"


def main():
    rng = random.Random(20240611)
    buckets = {True: [], False: []}
    seen = set()
    while any(len(b) < PER_CLASS for b in buckets.values()):
        colors, edges = draw(rng)
        key = (tuple(colors), tuple(edges))
        if key in seen or not covered(colors, edges):
            continue
        seen.add(key)
        label = has_triangle(colors, edges)
        if len(buckets[label]) < PER_CLASS:
            buckets[label].append((colors, edges))
    OUT.mkdir(parents=True, exist_ok=True)
    for old in OUT.glob("g*.txt"):
        old.unlink()
    graphs = [(g, True) for g in buckets[True]] + [(g, False) for g in buckets[False]]
    rng.shuffle(graphs)
    for idx, ((colors, edges), label) in enumerate(graphs):
        (OUT / f"g{idx:02}.txt").write_text(render(colors, edges, label))


if __name__ == "__main__":
    main()
