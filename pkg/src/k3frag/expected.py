"""Published reference values used by ``verify`` and the acceptance tests.

Nothing in this module is computed; every table is transcribed data.
Fragment lists are ordered as ``H1, H2, ...`` and every census column lists
the number of fragments of each type in one h-configuration.
"""

DEGREES = (2, 4, 6, 8, 10, 12, 14, 16, 18, 20, 22, 24, 28)

# number of fragment types per degree; absent degrees have none
GRAPHS = {2: 1, 4: 1, 6: 2, 8: 3, 10: 6, 12: 9, 14: 8, 16: 8, 18: 5, 20: 3,
          22: 1, 24: 1, 28: 1}

# largest number of fragments on one surface
MAX_COUNT = {2: 72, 4: 72, 6: 76, 8: 80, 10: 16, 12: 90, 14: 12, 16: 24, 18: 3,
             20: 4, 22: 1, 24: 1, 28: 1}

# number of h-configurations; unknown in degrees 2 and 4
H_CONFIGS = {2: None, 4: None, 6: 9235, 8: 860, 10: 171, 12: 44, 14: 21, 16: 12,
             18: 6, 20: 3, 22: 1, 24: 1, 28: 1}

# (rank, girth, |Aut|) of H1, H2, ...
TRIPLES = {
    2: [(2, 2, 2)],
    4: [(4, 3, 24)],
    6: [(6, 3, 12), (6, 4, 72)],
    8: [(8, 3, 12), (8, 4, 16), (8, 4, 48)],
    10: [(9, 3, 12), (10, 4, 4), (10, 4, 8), (10, 4, 20), (10, 4, 20), (10, 5, 120)],
    12: [(10, 3, 36), (10, 4, 24), (10, 4, 24), (11, 4, 16), (12, 4, 4), (12, 4, 8),
         (12, 4, 48), (12, 5, 16), (12, 5, 18)],
    14: [(13, 4, 4), (13, 4, 16), (14, 5, 4), (14, 5, 8), (14, 5, 8), (14, 5, 12),
         (14, 5, 14), (14, 6, 336)],
    16: [(14, 4, 8), (14, 4, 24), (14, 4, 48), (14, 5, 12), (14, 5, 12), (16, 5, 4),
         (16, 5, 6), (16, 6, 96)],
    18: [(16, 5, 8), (16, 5, 8), (17, 5, 4), (17, 6, 8), (17, 6, 24)],
    20: [(16, 6, 240), (17, 6, 48), (18, 5, 20)],
    22: [(19, 6, 8)],
    24: [(18, 6, 144)],
    28: [(20, 7, 336)],
}

# Fragment encodings in catalogue order. Degrees 2 and 4 and the graph
# K(3,3) have no published encoding; those strings are ours.
ENCODINGS = {
    2: ["(1x2)(1x2)(1x2)"],
    4: ["AA[2](1;1;1)"],
    6: ["AA[2](1;2;3) (1x2)(1x3)(2x3)",
        "AA[3](1;2;1;2) (1x2)"],
    8: ["AA[2](1;2;3) A[1](1,2,3) A[1](1,2,3)",
        "AA[3](1;2;3;4) (1x2)(1x3)(2x4)(3x4)",
        "AA[3](1;2;3;4) (1x2)(1x4)(2x3)(3x4)"],
    10: ["AA[2](1;2;3) AA[2](1;2;3) A[1](1,2,3)",
         "AA[3](1;2;3;4) A[2](1,2;3,4) (1x3)(2x4)",
         "AA[3](1;2;3;4) A[1](1,2,4) A[1](2,3,4) (1x3)",
         "AA[3](1;2;3;4) A[2](1,3;2,4) (1x2)(3x4)",
         "AA[3](1;2;3;4) A[2](1,4;2,3) (1x2)(3x4)",
         "AA[4](1;2;3;4;5) (1x3)(1x4)(2x4)(2x5)(3x5)"],
    12: ["AA[2](1;2;3) AA[2](1;2;3) AA[2](1;2;3)",
         "AA[3](1;2;3;4) AA[3](1;2;3;4) (1x2)(3x4)",
         "AA[3](1;2;3;4) AA[3](1;2;4;3) (1x2)(3x4)",
         "AA[3](1;2;3;4) AA[3](1;2;3;4) (1x3)(2x4)",
         "AA[3](1;2;3;4) A[2](1,2;3,4) A[2](1,3;2,4)",
         "AA[3](1;2;3;4) A[2](1,2;3,4) A[2](1,4;2,3)",
         "AA[3](1;2;3;4) A[2](1,3;2,4) A[2](1,3;2,4)",
         "AA[4](1;2;3;4;5) A[1](1,4,5) A[1](2,3,5) (1x3)(2x4)",
         "AA[4](1;2;3;4;5) A[1](1,2,5) A[1](3,4,5) (1x3)(2x4)"],
    14: ["AA[3](1;2;3;4) AA[3](1;2;4;3) A[2](1,3;2,4)",
         "AA[3](1;2;3;4) AA[3](1;2;3;4) A[2](1,3;2,4)",
         "AA[4](1;2;3;4;5) A[3](3,5;2;1,4) A[1](2,4,5) (1x3)",
         "AA[4](1;2;3;4;5) A[2](1,4;2,5) A[2](2,4;3,5) (1x3)",
         "AA[4](1;2;3;4;5) A[3](3,4;2;1,5) A[1](2,4,5) (1x3)",
         "AA[4](1;2;3;4;5) A[2](1,4;2,3) A[1](1,3,5) A[1](2,4,5)",
         "AA[4](1;2;3;4;5) A[2](1,2;3,4) A[1](1,3,5) A[1](2,4,5)",
         "AA[5](1;2;3;4;5;6) A[1](1,3,5) A[1](2,4,6) (1x4)(2x5)(3x6)"],
    16: ["AA[3](1;2;3;4) AA[3](1;2;3;4) AA[3](1;2;4;3)",
         "AA[3](1;2;3;4) AA[3](1;2;4;3) AA[3](1;3;2;4)",
         "AA[3](1;2;3;4) AA[3](1;2;3;4) AA[3](1;2;3;4)",
         "AA[4](1;2;3;4;5) AA[4](1;2;3;5;4) A[1](2,4,5) (1x3)",
         "AA[4](1;2;3;4;5) AA[4](1;2;3;4;5) A[1](2,4,5) (1x3)",
         "AA[4](1;2;3;4;5) A[3](1,2;4;3,5) A[3](1,3;4;2,5)",
         "AA[4](1;2;3;4;5) A[3](1,4;2;3,5) A[3](1,3;5;2,4)",
         "AA[5](1;2;3;4;5;6) A[2](1,3;2,6) A[2](3,5;4,6) (1x4)(2x5)"],
    18: ["AA[4](1;2;3;4;5) AA[4](1;4;2;5;3) A[3](1,2;4;3,5)",
         "AA[4](1;2;3;4;5) AA[4](1;2;5;3;4) A[3](2,3;5;1,4)",
         "AA[4](1;2;3;4;5) AA[4](1;2;5;3;4) A[3](1,3;5;2,4)",
         "AA[5](1;2;3;4;5;6) AA[5](1;2;6;4;5;3) (1x4)(2x5)(3x6)",
         "AA[5](1;2;3;4;5;6) AA[5](1;2;3;4;5;6) (1x4)(2x5)(3x6)"],
    20: ["AA[5](1;2;3;4;5;6) AA[5](1;2;3;4;5;6) A[1](1,3,5) A[1](2,4,6)",
         "AA[5](1;2;3;4;5;6) AA[5](1;3;2;4;6;5) A[2](2,5;3,6) (1x4)",
         "AA[4](1;2;3;4;5) AA[4](1;2;3;4;5) AA[4](1;4;2;5;3)"],
    22: ["AA[5](1;2;3;4;5;6) AA[5](1;4;5;2;6;3) A[4](3,5;1;2;4,6)"],
    24: ["AA[5](1;2;3;4;5;6) AA[5](1;2;5;6;3;4) AA[5](1;4;5;2;3;6)"],
    28: ["DD[5](1,2;3,4;5,6;7,8) DD[5](1,5;3,7;2,8;4,6) AA[7](1;7;6;2;3;5;8;4)"],
}

# Published encodings as printed (LaTeX macro form), for parser tests.
PUBLISHED_LATEX = {
    6: [r"\GRAPH\AA[2](1;2;3) \(1x2)\(1x3)\(2x3)"],
    28: [r"\GRAPH\DD[5](1,2;3,4;5,6;7,8) \DD[5](1,5;3,7;2,8;4,6) \AA[7](1;7;6;2;3;5;8;4) "],
}

# h-configuration censuses: one tuple (count of H1, H2, ...) per column.
# In degree 12 columns with equal censuses are merged; CENSUS_MULTIPLICITY
# gives how many h-configurations share each column.
CENSUS = {
    12: [(20, 0, 0, 0, 0, 0, 0, 0, 0), (4, 0, 0, 0, 0, 0, 0, 0, 0), (1, 0, 0, 0, 0, 0, 0, 0, 0),
         (0, 1, 0, 0, 0, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0, 0, 0, 0), (0, 0, 0, 3, 0, 0, 0, 0, 0),
         (0, 0, 0, 1, 0, 0, 0, 0, 0), (0, 0, 0, 0, 16, 0, 0, 0, 0), (0, 0, 0, 0, 4, 0, 0, 0, 0),
         (0, 0, 0, 0, 3, 0, 0, 0, 0), (0, 0, 0, 0, 2, 0, 0, 0, 0), (0, 0, 0, 0, 1, 1, 0, 0, 0),
         (0, 0, 0, 0, 1, 0, 0, 0, 0), (0, 0, 0, 0, 0, 6, 0, 0, 0), (0, 0, 0, 0, 0, 1, 0, 0, 0),
         (0, 0, 0, 0, 0, 0, 16, 0, 0), (0, 0, 0, 0, 0, 0, 2, 0, 0), (0, 0, 0, 0, 0, 0, 1, 0, 0),
         (0, 0, 0, 0, 0, 0, 0, 90, 0), (0, 0, 0, 0, 0, 0, 0, 10, 0), (0, 0, 0, 0, 0, 0, 0, 6, 0),
         (0, 0, 0, 0, 0, 0, 0, 4, 0), (0, 0, 0, 0, 0, 0, 0, 3, 0), (0, 0, 0, 0, 0, 0, 0, 2, 0),
         (0, 0, 0, 0, 0, 0, 0, 1, 0), (0, 0, 0, 0, 0, 0, 0, 0, 3), (0, 0, 0, 0, 0, 0, 0, 0, 2),
         (0, 0, 0, 0, 0, 0, 0, 0, 1)],
    14: [(2, 1, 0, 0, 0, 0, 0, 0), (1, 0, 0, 0, 0, 0, 0, 0), (0, 3, 0, 0, 0, 0, 0, 0),
         (0, 1, 0, 0, 0, 0, 0, 0), (0, 0, 8, 0, 4, 0, 0, 0), (0, 0, 3, 0, 0, 0, 0, 0),
         (0, 0, 2, 0, 2, 0, 0, 0), (0, 0, 2, 0, 0, 0, 0, 0), (0, 0, 2, 0, 0, 0, 0, 0),
         (0, 0, 1, 0, 0, 0, 0, 0), (0, 0, 0, 3, 0, 0, 0, 0), (0, 0, 0, 2, 0, 0, 0, 0),
         (0, 0, 0, 1, 0, 0, 0, 0), (0, 0, 0, 0, 2, 0, 0, 0), (0, 0, 0, 0, 1, 0, 0, 0),
         (0, 0, 0, 0, 0, 4, 0, 0), (0, 0, 0, 0, 0, 2, 0, 0), (0, 0, 0, 0, 0, 1, 0, 0),
         (0, 0, 0, 0, 0, 0, 1, 0), (0, 0, 0, 0, 0, 0, 0, 2), (0, 0, 0, 0, 0, 0, 0, 1)],
    16: [(4, 0, 0, 0, 0, 0, 0, 0), (1, 0, 0, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0, 0, 0),
         (0, 0, 4, 0, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0, 0, 0), (0, 0, 0, 1, 0, 0, 0, 0),
         (0, 0, 0, 0, 1, 0, 0, 0), (0, 0, 0, 0, 0, 1, 0, 0), (0, 0, 0, 0, 0, 0, 1, 0),
         (0, 0, 0, 0, 0, 0, 0, 24), (0, 0, 0, 0, 0, 0, 0, 2), (0, 0, 0, 0, 0, 0, 0, 1)],
    18: [(1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (0, 0, 1, 0, 0), (0, 0, 0, 1, 0), (0, 0, 0, 0, 3),
         (0, 0, 0, 0, 1)],
    20: [(1, 0, 0), (0, 1, 0), (0, 0, 4)],
    22: [(1,)],
    24: [(1,)],
    28: [(1,)],
}

CENSUS_MULTIPLICITY = {
    12: (1, 1, 1, 1, 1, 1, 1, 1, 2, 1, 6, 1, 1, 1, 1, 1, 2, 1, 1, 1, 1, 3, 3, 5, 1, 1, 2, 1),
}

# number of configurations (geometric graphs) behind each census column
CONFIGURATIONS = {
    16: (1, 2, 5, 1, 1, 2, 2, 6, 4, 1, 1, 7),
    18: (1, 1, 4, 3, 1, 1),
    20: (1, 1, 1),
}

# degree 8: perfect subgraphs of the cube and the saturated bouquet sizes
CUBE_EDGES = ((4, 5), (4, 6), (0, 1), (0, 2), (1, 5), (1, 3), (5, 7), (6, 2), (6, 7),
              (3, 7), (3, 2), (4, 0))
WAGNER_EDGES = ((4, 0), (4, 5), (4, 6), (6, 3), (3, 1), (0, 1), (0, 2), (2, 7), (7, 5),
                (1, 5), (6, 7), (3, 2))
CUBE_PERFECT = {(0,): (3, 5, 6, 7), (0, 2): (5, 7), (0, 7): (), (0, 1, 2, 3): ()}
BOUQUET_SIZES = (1, 2, 2, 2, 3, 3, 4, 4, 4, 5, 5, 7, 8, 20)
THETA32_FRAGMENTS = 80
THETA32_BOUQUET = 20

# degree 8: 3-element vertex sets o and the obstruction they produce when a
# vector p with p^2 = 0, p.h = 3, p.v = [v in o] is adjoined.
# None marks "not hyperbolic"; otherwise the vertices v with
# v_a + v_b + v_c - p exceptional.
OCTIC_ORBITS = {
    "H2": {(0, 1, 2): None, (0, 2, 4): None, (0, 1, 6): (2, 3, 7), (0, 2, 5): (3, 4, 6),
           (0, 3, 5): (4, 6, 7)},
    "H3": {(0, 1, 2): None, (0, 1, 6): (2, 3, 7), (0, 3, 5): (4, 6, 7)},
}

# degree 6 perfect subgraphs of the prism (vertex numbering 1..6)
PRISM_EDGES = ((1, 2), (1, 3), (2, 3), (1, 4), (4, 5), (4, 6), (2, 5), (3, 6), (5, 6))
PRISM_PERFECT = {(1,): (5, 6), (1, 4): (), (1, 2, 3): ()}

# hyperelliptic models: maximal number of fragments per degree
HYPERELLIPTIC_MAX = {2: 72, 4: 144, 6: 36, 8: 56}
HYPERELLIPTIC_OCTIC_SET = (0, 1, 4, 10, 20, 35, 56)

# quartic bound chain
QUARTIC_LINES_MAX = 48
QUARTIC_MULT_MAX = 6
QUARTIC_BOUND = 72
QUARTIC_BOUND_SHARP_MULT = 60
