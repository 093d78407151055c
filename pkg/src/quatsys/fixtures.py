"""Reference matrices with known closed-form answers.

Two families: a 3x3 normal matrix together with a similarity transform of
it (exact eigen-decomposition known), and a singular Hermitian 3x3 matrix
of index 1 used for the Drazin-based differential system.
"""
from __future__ import annotations

from .lqds import PolynomialVector
from .matrix import QMatrix
from .textio import parse_vector

# normal matrix, its Hermitian square N*N and a unitary diagonalizer
NORMAL_N = QMatrix.from_rows([
    ["2", "0", "i+j"],
    ["0", "i", "0"],
    ["i-j", "0", "2"],
])
NORMAL_GRAM = QMatrix.from_rows([
    ["6", "0", "4j"],
    ["0", "1", "0"],
    ["-4j", "0", "6"],
])
NORMAL_GRAM_CHARPOLY = (-20, 32, -13, 1)  # lowest degree first
NORMAL_GRAM_EIGENVALUES = (10, 2, 1)
NORMAL_UNITARY = QMatrix.from_rows([
    ["0.5-0.5j", "0", "0.5+0.5j"],
    ["0", "1", "0"],
    ["0.5+0.5j", "0", "0.5-0.5j"],
])
NORMAL_EIGENVALUES = ("1+i", "i", "3+i")  # matching the columns of NORMAL_UNITARY
NORMAL_D = QMatrix.diag(list(NORMAL_EIGENVALUES))

# A = T N T^{-1}
SIMILARITY_T = QMatrix.from_rows([
    ["-k", "j", "2"],
    ["i", "k", "i"],
    ["-j", "1", "i"],
])
SIMILARITY_T_INV = QMatrix.from_rows([
    ["-0.5+0.5k", "-0.5i+j", "-0.5i"],
    ["0.5i-0.5j", "-1.5", "0.5+k"],
    ["0", "-0.5i+0.5j", "-0.5i-0.5j"],
])
SIMILAR_A = QMatrix.from_rows([
    ["1-2.5i-0.5j+k", "4+3j+2.5k", "2-2i-j-2.5k"],
    ["1.5-i-j-0.5k", "2+1.5i-3j+3k", "2+2.5i+j-k"],
    ["0.5-i+j-0.5k", "3-i-0.5j", "1+i-1.5j-2k"],
])
# eigenvectors of SIMILAR_A: the product T U (entry (3, 3) has real part +1/2)
SIMILAR_EIGENVECTORS = QMatrix.from_rows([
    ["1-0.5i+j-0.5k", "j", "1+0.5i-j-0.5k"],
    ["i", "k", "i"],
    ["-0.5+0.5i-0.5j+0.5k", "1", "0.5+0.5i-0.5j-0.5k"],
])
SIMILAR_EIGENVECTORS_INV = QMatrix.from_rows([
    ["-0.25+0.25i-0.25j+0.25k", "-0.25-0.5i+0.75j", "-0.25-0.5i-0.25j"],
    ["0.5i-0.5j", "-1.5", "0.5+k"],
    ["-0.25-0.25i+0.25j+0.25k", "0.25-0.5i+0.75j", "0.25-0.5i-0.25j"],
])

# x' = SIMILAR_A x + b(t) with b(t) = [i, -k, j] t
RAMP_SOURCE = PolynomialVector([parse_vector("0, 0, 0"), parse_vector("i, -k, j")])
RAMP_PARTICULAR_LINEAR = parse_vector(
    "2.4+0.7i+1.2j+0.1k, -1.35+2.45i-0.55j+1.35k, 0.75-0.45i-2.25j+1.65k")
RAMP_PARTICULAR_CONSTANT = parse_vector(
    "-0.06+1.57i-0.18j+0.71k, -2.11+0.02i-0.83j-0.44k, -0.6-0.57i+0.3j+2.49k")

# singular Hermitian matrix of index 1 and rank 2
SINGULAR_HERMITIAN_A = QMatrix.from_rows([
    ["1", "k", "-i"],
    ["-k", "2", "j"],
    ["i", "-j", "1"],
])
SINGULAR_HERMITIAN_A_SQUARED = QMatrix.from_rows([
    ["3", "4k", "-3i"],
    ["-4k", "6", "4j"],
    ["3i", "-4j", "3"],
])
SINGULAR_SOURCE = parse_vector("j, -k, i")
SINGULAR_A_TIMES_B = parse_vector("2+j, i-3k, 2i+k")
SINGULAR_A2_TIMES_B = parse_vector("7+3j, 4i-10k, 7i+3k")
# x' + A x = b, i.e. x' = (-A) x + b: constant and linear coefficients
SINGULAR_SOLUTION = PolynomialVector([
    parse_vector("1/2j, -1/2i-1/2k, 1/2k"),
    parse_vector("-1/2+1/2j, 0, 1/2i-1/2k"),
])
