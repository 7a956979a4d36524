"""graph6 encoding and decoding.

Standard printable-ASCII format: a vertex-count header followed by the upper
triangle of the adjacency matrix in column-major order, six bits per byte,
offset by 63. Decoding errors report the byte offset of the first bad byte.
"""

from __future__ import annotations

from .graphs import Graph

__all__ = ["Graph6Error", "encode_graph6", "decode_graph6"]

_HEADER = ">>graph6<<"


class Graph6Error(ValueError):
    """Malformed graph6 input; ``offset`` is the position of the offending byte."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


def _encode_n(n: int) -> str:
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr((n >> s & 0x3F) + 63) for s in (12, 6, 0))
    if n < 1 << 36:
        return "~~" + "".join(chr((n >> s & 0x3F) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise ValueError("vertex count too large for graph6")


def encode_graph6(g: Graph) -> str:
    n = g.n
    out = [_encode_n(n)]
    bits = 0
    nbits = 0
    for j in range(1, n):
        col = g.adj[j]
        for i in range(j):
            bits = bits << 1 | (col >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(bits + 63))
                bits = nbits = 0
    if nbits:
        out.append(chr((bits << (6 - nbits)) + 63))
    return "".join(out)


def decode_graph6(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError as exc:
            raise Graph6Error("non-ASCII byte", exc.start) from None
    if text.startswith(_HEADER):
        text = text[len(_HEADER):]
    text = text.rstrip("\r\n")
    if not text:
        raise Graph6Error("empty input", 0)
    for pos, ch in enumerate(text):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"byte {ord(ch)!r} outside graph6 range 63..126", pos)

    if text[0] != "~":
        n = ord(text[0]) - 63
        body_at = 1
    elif len(text) >= 2 and text[1] != "~":
        if len(text) < 4:
            raise Graph6Error("truncated vertex count", len(text))
        n = 0
        for ch in text[1:4]:
            n = n << 6 | (ord(ch) - 63)
        body_at = 4
    else:
        if len(text) < 8:
            raise Graph6Error("truncated vertex count", len(text))
        n = 0
        for ch in text[2:8]:
            n = n << 6 | (ord(ch) - 63)
        body_at = 8

    need = (n * (n - 1) // 2 + 5) // 6
    if len(text) - body_at < need:
        raise Graph6Error(
            f"truncated adjacency data: need {need} bytes, got {len(text) - body_at}",
            len(text))
    if len(text) - body_at > need:
        raise Graph6Error("trailing data after adjacency bits", body_at + need)

    adj = [0] * n
    i, j = 0, 1  # next upper-triangle slot, column-major
    for k in range(need):
        sextet = ord(text[body_at + k]) - 63
        for b in range(5, -1, -1):
            if j >= n:
                if sextet >> b & 1:
                    raise Graph6Error("nonzero padding bits", body_at + k)
                continue
            if sextet >> b & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            i += 1
            if i == j:
                i, j = 0, j + 1
    return Graph._from_adj(n, adj)
