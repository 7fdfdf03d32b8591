"""Worked examples as literal data."""

from maghyper.core import Hypergraph

DELTA2 = Hypergraph.from_edges(
    [["0"], ["1"], ["2"], ["0", "1"], ["0", "2"], ["1", "2"], ["0", "1", "2"]]
)
NOTCHED = Hypergraph.from_edges([["0"], ["1"], ["2"], ["0", "1"], ["1", "2"], ["0", "1", "2"]])
PATH3 = Hypergraph.from_edges([["0"], ["1"], ["0", "1"], ["1", "2"]])
K2 = Hypergraph.from_edges([["a", "b"]])

h = "1/2"
# distance tables as half-length strings, rows and columns in canonical edge order
DELTA2_D = [
    ["0", "1", "1", h, h, "1", h],
    ["1", "0", "1", h, "1", h, h],
    ["1", "1", "0", "1", h, h, h],
    [h, h, "1", "0", "1", "1", h],
    [h, "1", h, "1", "0", "1", h],
    ["1", h, h, "1", "1", "0", h],
    [h, h, h, h, h, h, "0"],
]
NOTCHED_D = [
    ["0", "1", "1", h, "1", h],
    ["1", "0", "1", h, h, h],
    ["1", "1", "0", "1", h, h],
    [h, h, "1", "0", "1", h],
    ["1", h, h, "1", "0", h],
    [h, h, h, h, h, "0"],
]
del h
