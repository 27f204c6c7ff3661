import itertools
from typing import Iterator


def grouper_it(n, iterable):
    it = iter(iterable)
    while True:
        chunk_it = itertools.islice(it, n)
        try:
            first_el = next(chunk_it)
        except StopIteration:
            return
        yield itertools.chain((first_el,), chunk_it)


def popcount(x: int) -> int:
    return bin(x).count("1")


def iter_bits(x: int) -> Iterator[int]:
    """
    Yields the positions of the set bits of `x`, lowest first.
    """
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def lowest_bit(x: int) -> int:
    """
    Position of the lowest set bit of `x`, or -1 if `x` is 0.
    """
    return (x & -x).bit_length() - 1


def mask_of(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m
