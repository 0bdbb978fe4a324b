"""Matrices and numeric vectors printed in the original experiments.

Full matrices can be run through the engine; ``partial`` fixtures hold only
the leading rows that were printed and exist for inspection and metric tests.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactmat import ExactMatrix

WORKING_14X16 = """\
-627 113 955 202 -282 164 -455 -139 -337 220 -114 85 261 473 113 240
545 -95 -831 -176 246 -145 398 121 292 -193 99 -73 -230 -413 -96 -209
179 -30 -269 -59 80 -46 130 40 94 -65 34 -23 -76 -135 -31 -69
969 -167 -1471 -314 436 -258 706 215 517 -343 178 -129 -409 -733 -173 -371
476 -87 -730 -152 214 -125 345 107 257 -167 85 -65 -197 -360 -86 -181
-305 55 464 97 -138 80 -221 -67 -164 109 -55 41 127 231 53 116
-271 49 417 87 -121 73 -197 -60 -147 96 -48 38 112 207 49 103
-596 107 914 190 -269 157 -434 -133 -322 211 -105 81 247 452 105 228
278 -52 -428 -88 122 -72 201 62 150 -99 48 -39 -112 -212 -50 -105
435 -78 -664 -138 194 -114 315 97 232 -151 77 -59 -180 -327 -78 -167
-218 39 332 71 -99 58 -158 -49 -117 78 -40 30 92 165 39 82
-330 60 502 104 -148 86 -237 -73 -177 117 -59 45 136 249 59 125
-521 94 799 168 -234 136 -380 -117 -283 183 -92 70 213 394 94 200
-339 65 523 107 -153 87 -245 -77 -185 120 -59 47 137 257 61 128
"""

BEST_REMAINDER_14X16 = """\
22 7 -28 -7 6 -6 15 -3 9 -7 4 16 -15 -12 4 -15
-20 -1 20 9 -6 1 -12 -3 -6 10 -7 -4 10 12 1 10
18 -7 -16 -13 11 0 15 17 2 -19 11 -23 -7 -20 -8 0
-24 -3 28 9 -6 0 -14 1 -9 10 -6 -14 13 12 -4 16
-15 -8 17 4 -3 5 -10 8 -7 1 -2 -19 12 5 -5 14
0 7 -3 2 -4 -2 -1 -9 2 8 -3 18 -3 6 4 -7
13 4 -17 -2 4 -3 8 -5 7 1 1 15 -9 -3 3 -11
25 5 -25 -11 7 -5 16 -1 8 -8 9 12 -17 -13 0 -15
-13 -6 17 3 -6 6 -9 6 -8 -2 -2 -16 12 3 -3 12
-14 -5 17 6 -5 4 -10 4 -8 5 -4 -13 11 8 -3 10
10 2 -14 -2 2 -2 7 -2 5 -1 1 7 -5 -5 1 -8
3 8 -9 1 -2 -4 3 -11 5 8 -3 22 -6 4 6 -10
23 3 -19 -11 9 -4 15 4 3 -14 11 1 -18 -16 0 -10
26 4 -26 -13 10 -7 20 4 7 -12 10 1 -18 -18 -2 -13
"""

BEST_REMAINDER_13X15 = """\
-118 112 56 -36 1 -69 -24 -33 63 -45 -12 55 72 11 55
158 -156 -76 53 -7 99 38 44 -89 60 5 -77 -104 -15 -70
36 -32 -18 12 -3 22 10 9 -20 15 -2 -17 -24 -7 -14
145 -143 -68 45 -3 86 32 41 -79 54 13 -68 -91 -13 -66
-140 137 65 -46 5 -85 -30 -40 78 -52 -10 67 90 11 63
-67 63 34 -20 1 -40 -17 -17 41 -27 -1 31 45 7 29
-75 75 34 -23 0 -44 -16 -22 42 -26 -8 33 47 5 35
107 -103 -51 30 0 63 24 28 -62 40 8 -48 -69 -9 -48
86 -83 -39 25 -1 50 19 22 -45 31 7 -39 -52 -8 -40
-30 26 16 -10 0 -17 -8 -7 19 -13 -1 15 19 3 12
-157 151 73 -50 4 -93 -35 -43 88 -59 -10 74 100 14 70
-37 41 16 -9 -1 -21 -5 -15 16 -10 -11 12 20 3 20
-54 54 23 -14 -3 -28 -8 -17 28 -18 -15 22 30 2 27
"""

HEINEKEN_127X8_HEAD = """\
-3838608 2675947 -2212100 323972 2163968 4944023 -16113986 -506210
4157363 -2897967 2394459 -350613 -2343527 -5354460 17451974 549329
4443281 -3097387 2560331 -375045 -2504759 -5722740 18651742 586177
-2285021 1592690 -1315796 192806 1287914 2943010 -9591208 -302339
-903675 630414 -523497 76793 509785 1163755 -3793754 -116721
"""

HEINEKEN_135X16_HEAD = """\
-49 147 46 -138 164 116 -224 -48 421 -160 330 -128 120 -471 -76 -242
3 2 -1 5 -12 -9 1 -2 -31 8 -45 -3 15 48 -17 38
2 -4 -1 -1 -1 -1 7 1 -3 -1 -8 5 -5 10 8 1
29 -198 3 184 -124 -57 188 39 -245 150 91 142 -238 64 149 24
-78 104 -50 -15 88 -58 116 127 467 -180 611 49 -237 -632 592 -631
"""

HEINEKEN_73X16_HEAD = """\
0 0 0 -1 0 0 0 0 0 -1 0 0 0 0 0 0
0 -1 0 1 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 -1 0 1 0 0 0 0 0 0 0 0 0 0
1 0 1 0 1 0 1 0 0 0 0 0 0 0 0 0
0 0 0 0 1 -1 0 0 0 0 0 1 0 0 -1 0
"""

HEINEKEN_63X8_HEAD = """\
0 0 0 0 0 1 0 -1
1 1 -1 1 0 0 0 0
1 0 0 1 0 -1 -1 0
1 1 1 -1 0 0 0 0
-1 1 -1 1 0 0 0 0
"""

# Row of the 135x16 matrix holding its largest entry.
HEINEKEN_135X16_MAX_ROW = (
    197, -433, 73, 70, -201, 173, -266, -283, -1014, 401, -1090, -26, 466, 1233, -1198, 1309,
)

# Five modular-pipeline determinants of the 304x153 matrix.
DETERMINANTS_A1 = (
    36132812500000000,
    34004211425781250,
    26329040527343750,
    33142089843750000,
    55114746093750000,
)

# First two determinants of the 380x191 matrix; gcd 320.
DETERMINANTS_A2 = (1770749945013406400, 105018206175737920)

# The 55-digit determinants after 90 eliminations on the 380x191 matrix.
DETERMINANTS_A2_PARTIAL = (
    6809695809169251595747179546442846834847729901468148960,
    1068344058412672408526935938648402030177709499839183308,
)


@dataclass(frozen=True)
class Fixture:
    name: str
    description: str
    partial: bool
    text: str | None = None
    values: tuple[int, ...] | None = None

    @property
    def is_matrix(self) -> bool:
        return self.text is not None

    def matrix(self) -> ExactMatrix:
        if self.text is None:
            raise ValueError(f"fixture {self.name!r} is a numeric vector, not a matrix")
        return ExactMatrix([[int(x) for x in line.split()] for line in self.text.splitlines()])


FIXTURES: dict[str, Fixture] = {
    "working-14x16": Fixture(
        "working-14x16",
        "Working matrix left after eleven unit pivots on the 26x27 knot-group relation matrix.",
        partial=False,
        text=WORKING_14X16,
    ),
    "best-remainder-14x16": Fixture(
        "best-remainder-14x16",
        "The working matrix after one best-remainder pass with pivot -23 at (3, 12).",
        partial=False,
        text=BEST_REMAINDER_14X16,
    ),
    "best-remainder-13x15": Fixture(
        "best-remainder-13x15",
        "After then pivoting on the unit at (2, 2) of the best-remainder matrix.",
        partial=False,
        text=BEST_REMAINDER_13X15,
    ),
    "heineken-127x8-head": Fixture(
        "heineken-127x8-head",
        "First five rows of a dense 127x8 matrix reached just before word overflow.",
        partial=True,
        text=HEINEKEN_127X8_HEAD,
    ),
    "heineken-135x16-head": Fixture(
        "heineken-135x16-head",
        "First five rows of the 135x16 matrix eight pivots earlier.",
        partial=True,
        text=HEINEKEN_135X16_HEAD,
    ),
    "heineken-73x16-head": Fixture(
        "heineken-73x16-head",
        "First five rows after pairwise row reduction removed 62 dependent rows.",
        partial=True,
        text=HEINEKEN_73X16_HEAD,
    ),
    "heineken-63x8-head": Fixture(
        "heineken-63x8-head",
        "First five rows of the 63x8 matrix at the former overflow point.",
        partial=True,
        text=HEINEKEN_63X8_HEAD,
    ),
    "determinants-A1": Fixture(
        "determinants-A1",
        "Five 17-digit subdeterminants of the 304x153 matrix; their gcd is 2 * 5**18.",
        partial=False,
        values=DETERMINANTS_A1,
    ),
    "determinants-A2": Fixture(
        "determinants-A2",
        "Two subdeterminants of the 380x191 matrix; their gcd is 2**6 * 5.",
        partial=False,
        values=DETERMINANTS_A2,
    ),
    "determinants-A2-partial": Fixture(
        "determinants-A2-partial",
        "Two 55-digit subdeterminants after 90 eliminations, digits as printed.",
        partial=False,
        values=DETERMINANTS_A2_PARTIAL,
    ),
}


def fixture_names() -> list[str]:
    return list(FIXTURES)


def get_fixture(name: str) -> Fixture:
    try:
        return FIXTURES[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}") from None


def fixture_matrix(name: str) -> ExactMatrix:
    return get_fixture(name).matrix()
