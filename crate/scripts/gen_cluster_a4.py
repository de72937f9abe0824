#!/usr/bin/env python3
"""Writes fixtures/clusterA4.bundle: the mesh category of the cluster category of
1 -> 2 -> 3 -> 4, given by its AR quiver ZA4 modulo (r, c) ~ (5 - r, c + 7)."""

from pathlib import Path

NAMES = {
    (4, 0): "P4", (4, 2): "S3", (4, 4): "S2", (4, 6): "S1",
    (3, 1): "P3", (3, 3): "M23", (3, 5): "I2",
    (2, 0): "P2_1", (2, 2): "P2", (2, 4): "I3", (2, 6): "P3_1",
    (1, 1): "P1_1", (1, 3): "P1", (1, 5): "P4_1",
}
D = ["P1", "P4_1", "P4", "S3", "S2", "S1", "P1_1"]


def reduce(r, c):
    c %= 14
    if c >= 7:
        r, c = 5 - r, c - 7
    return r, c


def name(r, c):
    return NAMES[reduce(r, c)]


def arrow(s, t):
    return f"{name(*s)}to{name(*t)}"


def successors(r, c):
    return [(r2, c + 1) for r2 in (r - 1, r + 1) if 1 <= r2 <= 4]


def main():
    verts = sorted(NAMES, key=lambda rc: (rc[1], rc[0]))
    out = ["# Cluster category of type A4 as the mesh category of its AR quiver.",
           "# Vertex names: Pk, Ik, Sk are projective, injective and simple modules,",
           "# M23 is the module with top 2 and socle 3, and a suffix _1 is the shift [1].",
           "[field]", "rational", "[vertices]", " ".join(NAMES[v] for v in verts), "[arrows]"]
    arrows, taus = [], {}
    for v in verts:
        for w in successors(*v):
            arrows.append((v, w))
            out.append(f"{arrow(v, w)}: {name(*v)} -> {name(*w)}")
    out.append("[relations]")
    for z in verts:
        r, c = z
        middles = [(r2, c - 1) for r2 in (r - 1, r + 1) if 1 <= r2 <= 4]
        terms = [f"{arrow(m, z)}*{arrow((r, c - 2), m)}" for m in middles]
        out.append(" + ".join(terms) + " = 0")
    for functor in ("shift", "tau"):
        out.append(f"[functor {functor}]")
        for v in verts:
            out.append(f"{name(*v)} -> {name(v[0], v[1] - 2)}")
        for v, w in arrows:
            out.append(f"{arrow(v, w)} -> {arrow((v[0], v[1] - 2), (w[0], w[1] - 2))}")
    out += ["[ideals]", f"D = [{', '.join(D)}]", "J = jacobson", "[options]", "max_path_length = 4"]
    path = Path(__file__).resolve().parent.parent / "fixtures" / "clusterA4.bundle"
    path.write_text("\n".join(out) + "\n")


if __name__ == "__main__":
    main()
