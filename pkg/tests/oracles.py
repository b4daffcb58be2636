"""Brute-force reference computations that share no code with the package."""

from itertools import product as cartesian


def poset_grid(*sizes):
    """Elements of the product poset [a] x [b] x ..., as tuples."""
    return list(cartesian(*(range(n + 1) for n in sizes)))


def strictly_below(x, y):
    return x != y and all(a <= b for a, b in zip(x, y))


def chain_counts(*sizes):
    """Number of strictly increasing chains of each length in a product poset.

    Entry d counts chains with d+1 elements; these are the nondegenerate
    d-simplices of the nerve, i.e. of the product of standard simplices.
    """
    elems = poset_grid(*sizes)
    counts = []

    def extend(last, length):
        if len(counts) < length:
            counts.append(0)
        counts[length - 1] += 1
        for y in elems:
            if strictly_below(last, y):
                extend(y, length + 1)

    for x in elems:
        extend(x, 1)
    return tuple(counts)


def monotone(k, n):
    """All monotone maps [k] -> [n] by brute force over all functions."""
    return [t for t in cartesian(range(n + 1), repeat=k + 1)
            if all(t[i] <= t[i + 1] for i in range(k))]
