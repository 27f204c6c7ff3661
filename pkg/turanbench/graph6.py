"""
Reader and writer for the graph6 format.

graph6 stores the upper triangle of the adjacency matrix column by column,
``x(0,1), x(0,2), x(1,2), x(0,3), ...``, packed big-endian into 6-bit groups
that are each offset by 63 into printable ASCII. The vertex count is
prefixed in the same 6-bit alphabet.
"""

from pathlib import Path
from typing import Iterable, Iterator, List, Tuple, Union

from turanbench.errors import InvalidArgument
from turanbench.graph import Graph
from turanbench.util import grouper_it

__all__ = (
    "encode_graph6",
    "decode_graph6",
    "read_graph6",
    "write_graph6",
    "HEADER",
)

HEADER = ">>graph6<<"


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(
            chr(((n >> shift) & 0x3F) + 63) for shift in (12, 6, 0)
        )
    raise InvalidArgument(f"{n} vertices is too many for graph6")


def _decode_n(data: bytes) -> Tuple[int, int]:
    if not data:
        raise InvalidArgument("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        raise InvalidArgument("graph6 graphs over 258047 vertices")
    if len(data) < 4:
        raise InvalidArgument("truncated graph6 size prefix")
    n = 0
    for byte in data[1:4]:
        n = (n << 6) | (byte - 63)
    return n, 4


def _upper_triangle(n: int) -> Iterator[tuple]:
    for j in range(1, n):
        for i in range(j):
            yield i, j


def encode_graph6(g: Graph) -> str:
    """
    Returns the graph6 encoding of `g`, without header or newline.
    """
    bits = [g.adj[i] >> j & 1 for i, j in _upper_triangle(g.n)]
    out = [_encode_n(g.n)]
    for chunk in grouper_it(6, bits):
        chunk = list(chunk)
        value = 0
        for bit in chunk:
            value = (value << 1) | bit
        value <<= 6 - len(chunk)
        out.append(chr(value + 63))
    return "".join(out)


def decode_graph6(text: Union[str, bytes]) -> Graph:
    """
    Parses one graph6 line. A leading ``>>graph6<<`` header and surrounding
    whitespace are accepted.
    """
    if isinstance(text, str):
        text = text.encode("ascii")
    text = text.strip()
    if text.startswith(HEADER.encode("ascii")):
        text = text[len(HEADER):]
    if any(not 63 <= byte <= 126 for byte in text):
        raise InvalidArgument("graph6 bytes must lie in 63..126")

    n, offset = _decode_n(text)
    body = text[offset:]
    needed = (n * (n - 1) // 2 + 5) // 6
    if len(body) != needed:
        raise InvalidArgument(
            f"graph6 body for n={n} needs {needed} bytes, got {len(body)}"
        )

    adj = [0] * n
    pairs = _upper_triangle(n)
    for byte in body:
        value = byte - 63
        for shift in range(5, -1, -1):
            try:
                i, j = next(pairs)
            except StopIteration:
                if value & ((1 << (shift + 1)) - 1):
                    raise InvalidArgument("graph6 padding bits are not zero")
                break
            if value >> shift & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return Graph(n, tuple(adj))


def read_graph6(path: Union[str, Path]) -> List[Graph]:
    """
    Reads every graph from a graph6 file, one per non-blank line.
    """
    graphs = []
    for line in Path(path).read_text(encoding="ascii").splitlines():
        if line.strip():
            graphs.append(decode_graph6(line))
    return graphs


def write_graph6(
    path: Union[str, Path], graphs: Iterable[Graph], *, header: bool = False
):
    text = "".join(f"{encode_graph6(g)}\n" for g in graphs)
    if header:
        text = HEADER + text
    Path(path).write_text(text, encoding="ascii")
