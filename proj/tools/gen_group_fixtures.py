#!/usr/bin/env python3
"""Regenerates the bundled group tables under data/groups/."""
import itertools
import json
import pathlib

OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "groups"


def write(name, elements, mul, t, labels):
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    table = [index[mul(a, b)] for a in elements for b in elements]
    doc = {"name": name, "order": n, "identity": 0, "t": index[t],
           "labels": labels, "table": table}
    (OUT / f"{name}.json").write_text(json.dumps(doc, indent=1) + "\n")


def compose(p, q):
    # right action: x(pq) = (xp)q
    return tuple(q[p[i]] for i in range(len(p)))


def quat(a, b):
    # (sign, unit) with units 1,i,j,k
    sa, ua = a
    sb, ub = b
    prod = {("1", u): (1, u) for u in "1ijk"}
    prod.update({(u, "1"): (1, u) for u in "1ijk"})
    prod.update({("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
                 ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                 ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})
    s, u = prod[(ua, ub)]
    return (sa * sb * s, u)


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    write("c2", [0, 1], lambda a, b: (a + b) % 2, 1, ["1", "t"])
    write("v4", [(0, 0), (1, 0), (0, 1), (1, 1)],
          lambda a, b: ((a[0] + b[0]) % 2, (a[1] + b[1]) % 2), (1, 0), ["1", "a", "b", "ab"])
    perms = [(0, 1, 2), (1, 0, 2), (2, 1, 0), (0, 2, 1), (1, 2, 0), (2, 0, 1)]
    write("s3", perms, compose, (1, 0, 2), ["()", "(01)", "(02)", "(12)", "(012)", "(021)"])
    q = [(1, "1"), (-1, "1"), (1, "i"), (-1, "i"), (1, "j"), (-1, "j"), (1, "k"), (-1, "k")]
    write("q8", q, quat, (-1, "1"), ["1", "-1", "i", "-i", "j", "-j", "k", "-k"])


if __name__ == "__main__":
    main()
