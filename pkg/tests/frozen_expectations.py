"""Exact expectations frozen from the brute-force enumeration in ``oracles``.

Keys: (complex, k, nu, quantity, p).  Complexes: D1, D2, D3 are simplices,
S2, S3 boundaries of simplices, SdD2 the subdivided triangle.
"""

FROZEN = {
    ("D1", 1, "1/3", "bV", 0): "4/9",
    ("D1", 1, "1/3", "chiV", 0): "4/9",
    ("D1", 1, "1/3", "bK0", 0): "13/9",
    ("D1", 1, "1/3", "fK0", 0): "2",
    ("D1", 1, "1/3", "bK0", 1): "0",
    ("D1", 1, "1/3", "fK0", 1): "5/9",
    ("D1", 1, "1/2", "bV", 0): "1/2",
    ("D1", 1, "1/2", "chiV", 0): "1/2",
    ("D1", 1, "1/2", "bK0", 0): "3/2",
    ("D1", 1, "1/2", "fK0", 0): "2",
    ("D1", 1, "1/2", "bK0", 1): "0",
    ("D1", 1, "1/2", "fK0", 1): "1/2",
    ("D2", 1, "1/3", "bV", 0): "2/3",
    ("D2", 1, "1/3", "bV", 1): "0",
    ("D2", 1, "1/3", "chiV", 0): "2/3",
    ("D2", 1, "1/3", "bK0", 0): "5/3",
    ("D2", 1, "1/3", "fK0", 0): "3",
    ("D2", 1, "1/3", "bK0", 1): "0",
    ("D2", 1, "1/3", "fK0", 1): "5/3",
    ("D2", 1, "1/3", "bK0", 2): "0",
    ("D2", 1, "1/3", "fK0", 2): "1/3",
    ("D2", 1, "1/2", "bV", 0): "3/4",
    ("D2", 1, "1/2", "bV", 1): "0",
    ("D2", 1, "1/2", "chiV", 0): "3/4",
    ("D2", 1, "1/2", "bK0", 0): "7/4",
    ("D2", 1, "1/2", "fK0", 0): "3",
    ("D2", 1, "1/2", "bK0", 1): "0",
    ("D2", 1, "1/2", "fK0", 1): "3/2",
    ("D2", 1, "1/2", "bK0", 2): "0",
    ("D2", 1, "1/2", "fK0", 2): "1/4",
    ("D2", 2, "1/3", "bV", 0): "14/27",
    ("D2", 2, "1/3", "bV", 1): "0",
    ("D2", 2, "1/3", "chiV", 0): "14/27",
    ("D2", 2, "1/2", "bV", 0): "1/2",
    ("D2", 2, "1/2", "bV", 1): "0",
    ("D2", 2, "1/2", "chiV", 0): "1/2",
    ("S2", 1, "1/3", "bV", 0): "4/3",
    ("S2", 1, "1/3", "chiV", 0): "4/3",
    ("S2", 1, "1/3", "bK0", 0): "5/3",
    ("S2", 1, "1/3", "fK0", 0): "3",
    ("S2", 1, "1/3", "bK0", 1): "1/3",
    ("S2", 1, "1/3", "fK0", 1): "5/3",
    ("S2", 1, "1/2", "bV", 0): "3/2",
    ("S2", 1, "1/2", "chiV", 0): "3/2",
    ("S2", 1, "1/2", "bK0", 0): "7/4",
    ("S2", 1, "1/2", "fK0", 0): "3",
    ("S2", 1, "1/2", "bK0", 1): "1/4",
    ("S2", 1, "1/2", "fK0", 1): "3/2",
    ("S3", 1, "1/3", "bV", 0): "64/81",
    ("S3", 1, "1/3", "bV", 1): "64/81",
    ("S3", 1, "1/3", "chiV", 0): "0",
    ("S3", 1, "1/3", "bK0", 0): "145/81",
    ("S3", 1, "1/3", "fK0", 0): "4",
    ("S3", 1, "1/3", "bK0", 1): "0",
    ("S3", 1, "1/3", "fK0", 1): "10/3",
    ("S3", 1, "1/3", "bK0", 2): "17/81",
    ("S3", 1, "1/3", "fK0", 2): "4/3",
    ("S3", 1, "1/2", "bV", 0): "7/8",
    ("S3", 1, "1/2", "bV", 1): "7/8",
    ("S3", 1, "1/2", "chiV", 0): "0",
    ("S3", 1, "1/2", "bK0", 0): "15/8",
    ("S3", 1, "1/2", "fK0", 0): "4",
    ("S3", 1, "1/2", "bK0", 1): "0",
    ("S3", 1, "1/2", "fK0", 1): "3",
    ("S3", 1, "1/2", "bK0", 2): "1/8",
    ("S3", 1, "1/2", "fK0", 2): "1",
    ("S3", 2, "1/3", "bV", 0): "56/27",
    ("S3", 2, "1/3", "bV", 1): "0",
    ("S3", 2, "1/3", "chiV", 0): "56/27",
    ("S3", 2, "1/2", "bV", 0): "2",
    ("S3", 2, "1/2", "bV", 1): "0",
    ("S3", 2, "1/2", "chiV", 0): "2",
    ("D3", 1, "1/3", "bV", 0): "64/81",
    ("D3", 1, "1/3", "bV", 1): "0",
    ("D3", 1, "1/3", "bV", 2): "0",
    ("D3", 1, "1/3", "chiV", 0): "64/81",
    ("D3", 1, "1/3", "bK0", 0): "145/81",
    ("D3", 1, "1/3", "fK0", 0): "4",
    ("D3", 1, "1/3", "bK0", 1): "0",
    ("D3", 1, "1/3", "fK0", 1): "10/3",
    ("D3", 1, "1/3", "bK0", 2): "0",
    ("D3", 1, "1/3", "fK0", 2): "4/3",
    ("D3", 1, "1/3", "bK0", 3): "0",
    ("D3", 1, "1/3", "fK0", 3): "17/81",
    ("D3", 1, "1/2", "bV", 0): "7/8",
    ("D3", 1, "1/2", "bV", 1): "0",
    ("D3", 1, "1/2", "bV", 2): "0",
    ("D3", 1, "1/2", "chiV", 0): "7/8",
    ("D3", 1, "1/2", "bK0", 0): "15/8",
    ("D3", 1, "1/2", "fK0", 0): "4",
    ("D3", 1, "1/2", "bK0", 1): "0",
    ("D3", 1, "1/2", "fK0", 1): "3",
    ("D3", 1, "1/2", "bK0", 2): "0",
    ("D3", 1, "1/2", "fK0", 2): "1",
    ("D3", 1, "1/2", "bK0", 3): "0",
    ("D3", 1, "1/2", "fK0", 3): "1/8",
    ("D3", 2, "1/3", "bV", 0): "8/9",
    ("D3", 2, "1/3", "bV", 1): "0",
    ("D3", 2, "1/3", "bV", 2): "0",
    ("D3", 2, "1/3", "chiV", 0): "8/9",
    ("D3", 2, "1/2", "bV", 0): "7/8",
    ("D3", 2, "1/2", "bV", 1): "0",
    ("D3", 2, "1/2", "bV", 2): "0",
    ("D3", 2, "1/2", "chiV", 0): "7/8",
    ("D3", 3, "1/3", "bV", 0): "40/81",
    ("D3", 3, "1/3", "bV", 1): "0",
    ("D3", 3, "1/3", "bV", 2): "0",
    ("D3", 3, "1/3", "chiV", 0): "40/81",
    ("D3", 3, "1/2", "bV", 0): "1/2",
    ("D3", 3, "1/2", "bV", 1): "0",
    ("D3", 3, "1/2", "bV", 2): "0",
    ("D3", 3, "1/2", "chiV", 0): "1/2",
    ("SdD2", 1, "1/3", "bV", 0): "994/729",
    ("SdD2", 1, "1/3", "bV", 1): "22/729",
    ("SdD2", 1, "1/3", "chiV", 0): "4/3",
    ("SdD2", 1, "1/3", "bK0", 0): "1723/729",
    ("SdD2", 1, "1/3", "fK0", 0): "7",
    ("SdD2", 1, "1/3", "bK0", 1): "22/729",
    ("SdD2", 1, "1/3", "fK0", 1): "20/3",
    ("SdD2", 1, "1/3", "bK0", 2): "0",
    ("SdD2", 1, "1/3", "fK0", 2): "2",
    ("SdD2", 1, "1/2", "bV", 0): "97/64",
    ("SdD2", 1, "1/2", "bV", 1): "1/64",
    ("SdD2", 1, "1/2", "chiV", 0): "3/2",
    ("SdD2", 1, "1/2", "bK0", 0): "161/64",
    ("SdD2", 1, "1/2", "fK0", 0): "7",
    ("SdD2", 1, "1/2", "bK0", 1): "1/64",
    ("SdD2", 1, "1/2", "fK0", 1): "6",
    ("SdD2", 1, "1/2", "bK0", 2): "0",
    ("SdD2", 1, "1/2", "fK0", 2): "3/2",
}
