"""graph6 codec: exact strings, roundtrips, malformed-input offsets."""

import random

import pytest

from spexlab import Graph6Error, complete, decode_graph6, encode_graph6, turan
from conftest import random_graph


def test_k3_encodes_to_bw():
    assert encode_graph6(complete(3)) == "Bw"


def test_turan_roundtrip():
    g = turan(7, 3)
    assert decode_graph6(encode_graph6(g)).adj == g.adj


def test_known_small_strings():
    assert encode_graph6(complete(1)) == "@"
    assert decode_graph6("?").n == 0
    assert decode_graph6("A_").edge_count == 1


def test_header_is_accepted():
    assert decode_graph6(">>graph6<<Bw").edge_count == 3


def test_bytes_input():
    assert decode_graph6(b"Bw").edge_count == 3


def test_long_form_vertex_count():
    g = turan(100, 3)
    s = encode_graph6(g)
    assert s.startswith("~")
    assert decode_graph6(s).adj == g.adj


def test_roundtrip_random_all_paddings():
    # n mod 6 cycles through every padding width
    rng = random.Random(606)
    for n in range(0, 26):
        for _ in range(8):
            g = random_graph(rng, n, rng.random())
            assert decode_graph6(encode_graph6(g)).adj == g.adj


class TestMalformed:
    def test_empty(self):
        with pytest.raises(Graph6Error) as err:
            decode_graph6("")
        assert err.value.offset == 0

    def test_truncated_count(self):
        with pytest.raises(Graph6Error, match="truncated vertex count"):
            decode_graph6("~")

    def test_out_of_range_byte(self):
        with pytest.raises(Graph6Error) as err:
            decode_graph6("B" + chr(130))
        assert err.value.offset == 1

    def test_trailing_junk(self):
        with pytest.raises(Graph6Error) as err:
            decode_graph6("Bw extra")
        assert err.value.offset == 2

    def test_truncated_body(self):
        with pytest.raises(Graph6Error, match="truncated adjacency data"):
            decode_graph6("B")

    def test_offset_is_int(self):
        try:
            decode_graph6("Bw!")
        except Graph6Error as err:
            assert isinstance(err.offset, int)
        else:
            pytest.fail("junk byte was accepted")
