"""Example posets and quiver presentations shared by the test modules."""

import itertools

from hhkit.combinat import Poset, Quiver, QuiverPresentation
from hhkit.exactmath import QQ, FieldSpec

F2 = FieldSpec.prime(2)
F3 = FieldSpec.prime(3)


def all_posets(n):
    """One representative of every isomorphism class of posets on n points."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    seen, out = set(), []
    perms = list(itertools.permutations(range(n)))
    for mask in range(1 << len(pairs)):
        rel = {pairs[k] for k in range(len(pairs)) if mask >> k & 1}
        if any((i, j) in rel and (j, k) in rel and (i, k) not in rel
               for i in range(n) for j in range(n) for k in range(n)):
            continue
        canon = min(tuple(sorted((p[i], p[j]) for i, j in rel)) for p in perms)
        if canon in seen:
            continue
        seen.add(canon)
        out.append(Poset(list(range(n)), sorted(rel)))
    return out


def small_posets(max_size=5):
    return [X for n in range(1, max_size + 1) for X in all_posets(n)]


def circle():
    return Poset(["a", "b", "c", "d"], [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])


def named_posets():
    return {
        "point": Poset(["a"]),
        "two points": Poset(["a", "b"]),
        "chain 3": Poset([1, 2, 3], [(1, 2), (2, 3)]),
        "V": Poset(["a", "b", "c"], [("a", "b"), ("a", "c")]),
        "circle": circle(),
        # suspension of the circle: a 2-sphere
        "sphere": Poset(list("abcdef"), [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"),
                                         ("c", "e"), ("c", "f"), ("d", "e"), ("d", "f")]),
        "boolean 2": Poset(["0", "x", "y", "1"], [("0", "x"), ("0", "y"), ("x", "1"), ("y", "1")]),
        # two minima below three maxima: a wedge of two circles up to homotopy
        "two holes": Poset(list("abcde"), [("a", "c"), ("a", "d"), ("a", "e"),
                                           ("b", "c"), ("b", "d"), ("b", "e")]),
    }


def _pres(vertices, arrows, relations=(), field=QQ):
    return QuiverPresentation(Quiver(vertices, arrows), relations, field)


def triangle():
    return _pres([1, 2, 3], [("alpha", 1, 2), ("beta", 2, 3), ("gamma", 3, 1)], [["alpha", "beta"]])


def quiver_catalogue():
    return {
        "A2": _pres([1, 2], [("a", 1, 2)]),
        "A3 linear": _pres([1, 2, 3], [("a", 1, 2), ("b", 2, 3)]),
        "A3 zero relation": _pres([1, 2, 3], [("a", 1, 2), ("b", 2, 3)], [["a", "b"]]),
        "A3 sink": _pres([1, 2, 3], [("a", 1, 2), ("b", 3, 2)]),
        "Kronecker": _pres([1, 2], [("a", 1, 2), ("b", 1, 2)]),
        "triangle": triangle(),
        "loop x^2": _pres([1], [("x", 1, 1)], [["x", "x"]]),
        "loop x^3": _pres([1], [("x", 1, 1)], [["x", "x", "x"]]),
        "2-cycle rad^2": _pres([1, 2], [("a", 1, 2), ("b", 2, 1)], [["a", "b"], ["b", "a"]]),
        "2-cycle rad^3": _pres([1, 2], [("a", 1, 2), ("b", 2, 1)], [["a", "b", "a"], ["b", "a", "b"]]),
        "A4 linear": _pres([1, 2, 3, 4], [("a", 1, 2), ("b", 2, 3), ("c", 3, 4)], [["a", "b", "c"]]),
        "D4": _pres([1, 2, 3, 4], [("a", 1, 4), ("b", 2, 4), ("c", 3, 4)]),
        "arrow into loop": _pres([1, 2], [("a", 1, 2), ("x", 2, 2)], [["x", "x"]]),
        "3-cycle rad^2 F2": _pres([1, 2, 3], [("a", 1, 2), ("b", 2, 3), ("c", 3, 1)],
                                  [["a", "b"], ["b", "c"], ["c", "a"]], F2),
    }
