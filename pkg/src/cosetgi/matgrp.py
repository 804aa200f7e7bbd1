"""Matrix arithmetic over prime fields GF(p) and projective permutation actions.

Vectors are rows and matrices act on the right (x -> x*M), matching the
right-action convention of the permutation layer.  Only prime fields are
supported; the groups needed here (PSL2(q), PSp4(3) and its degree-2
extension on 40 points) all live over GF(p).
"""

from .errors import ParseError
from .perm import Permutation


def is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class MatFp:
    """A k x k matrix over GF(p), entries reduced mod p."""

    __slots__ = ("p", "k", "entries")

    def __init__(self, p, entries):
        self.p = p
        rows = tuple(tuple(e % p for e in row) for row in entries)
        self.k = len(rows)
        for row in rows:
            if len(row) != self.k:
                raise ValueError("matrix must be square")
        self.entries = rows

    @classmethod
    def identity(cls, p, k):
        return cls(p, [[1 if i == j else 0 for j in range(k)] for i in range(k)])

    @classmethod
    def diagonal(cls, p, diag):
        k = len(diag)
        return cls(p, [[diag[i] if i == j else 0 for j in range(k)] for i in range(k)])

    def __mul__(self, other):
        p, k = self.p, self.k
        a, b = self.entries, other.entries
        return MatFp(p, [[sum(a[i][t] * b[t][j] for t in range(k)) % p
                          for j in range(k)] for i in range(k)])

    def __eq__(self, other):
        return (isinstance(other, MatFp) and self.p == other.p
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.p, self.entries))

    def transpose(self):
        return MatFp(self.p, list(zip(*self.entries)))

    def scale(self, c):
        return MatFp(self.p, [[c * e for e in row] for row in self.entries])

    def apply_row(self, vec):
        """Row vector times matrix."""
        p, k = self.p, self.k
        return tuple(sum(vec[i] * self.entries[i][j] for i in range(k)) % p
                     for j in range(k))

    def determinant(self):
        p, k = self.p, self.k
        m = [list(row) for row in self.entries]
        det = 1
        for col in range(k):
            pivot = next((r for r in range(col, k) if m[r][col] % p), None)
            if pivot is None:
                return 0
            if pivot != col:
                m[col], m[pivot] = m[pivot], m[col]
                det = -det
            det = det * m[col][col] % p
            inv = pow(m[col][col], -1, p)
            for r in range(col + 1, k):
                f = m[r][col] * inv % p
                if f:
                    m[r] = [(m[r][j] - f * m[col][j]) % p for j in range(k)]
        return det % p

    def inverse(self):
        """Gaussian elimination mod p; raises on singular input."""
        p, k = self.p, self.k
        m = [list(row) + [1 if i == j else 0 for j in range(k)]
             for i, row in enumerate(self.entries)]
        for col in range(k):
            pivot = next((r for r in range(col, k) if m[r][col] % p), None)
            if pivot is None:
                raise ZeroDivisionError("singular matrix")
            m[col], m[pivot] = m[pivot], m[col]
            inv = pow(m[col][col], -1, p)
            m[col] = [e * inv % p for e in m[col]]
            for r in range(k):
                if r != col and m[r][col]:
                    f = m[r][col]
                    m[r] = [(m[r][j] - f * m[col][j]) % p for j in range(2 * k)]
        return MatFp(p, [row[k:] for row in m])

    def __repr__(self):
        return f"MatFp(p={self.p}, {self.entries})"


class ProjectivePointTable:
    """Canonical representatives of the 1-dimensional subspaces of GF(p)^k.

    Representative: first nonzero coordinate normalized to 1; points listed
    in lexicographic order of the representative tuples.
    """

    __slots__ = ("p", "k", "points", "index")

    def __init__(self, p, k):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("dimension must be at least 1")
        self.p = p
        self.k = k
        points = []
        for first in range(k):
            tails = [[]]
            for _ in range(k - first - 1):
                tails = [t + [c] for t in tails for c in range(p)]
            for t in tails:
                points.append(tuple([0] * first + [1] + t))
        points.sort()
        self.points = points
        self.index = {v: i for i, v in enumerate(points)}
        assert len(points) == (p ** k - 1) // (p - 1)

    def __len__(self):
        return len(self.points)

    def normalize(self, vec):
        """Canonical representative of the line through vec."""
        first = next((c for c in vec if c % self.p), None)
        if first is None:
            raise ValueError("zero vector spans no line")
        inv = pow(first, -1, self.p)
        return tuple(c * inv % self.p for c in vec)

    def lookup(self, vec):
        return self.index[self.normalize(vec)]


def projective_points(k, p):
    return ProjectivePointTable(p, k)


def projective_action(mats, table):
    """Permutations of the projective points induced by invertible matrices."""
    perms = []
    for m in mats:
        if m.determinant() == 0:
            raise ZeroDivisionError("singular matrix has no projective action")
        images = [table.lookup(m.apply_row(v)) for v in table.points]
        perms.append(Permutation(images))
    return perms


def sl2_generators(q):
    """The two standard unipotent transvections generating SL2(q)."""
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    return [MatFp(q, [[1, 1], [0, 1]]), MatFp(q, [[1, 0], [1, 1]])]


_SP4_FORM = [[0, 0, 1, 0],
             [0, 0, 0, 1],
             [-1, 0, 0, 0],
             [0, -1, 0, 0]]


def sp4_form(p):
    """The fixed alternating form J pairing e1<->e3 and e2<->e4."""
    return MatFp(p, _SP4_FORM)


def preserves_form(m, j, multiplier=1):
    return m * j * m.transpose() == j.scale(multiplier)


def sp4_generators(p):
    """Symplectic transvections x -> x + c<x,v>v generating Sp4(p).

    Directions: the standard basis plus e1+e2 (the basis alone generates a
    proper subgroup, since its transvections never mix the two hyperbolic
    planes).  Every returned generator g satisfies g J g^T = J exactly.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    j = sp4_form(p)
    gens = []
    directions = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
                  (1, 1, 0, 0)]
    for v in directions:
        jv = [sum(j.entries[i][t] * v[t] for t in range(4)) % p for i in range(4)]
        for c in (1, 2):
            m = MatFp(p, [[(1 if i == t else 0) + c * jv[i] * v[t]
                           for t in range(4)] for i in range(4)])
            assert preserves_form(m, j)
            gens.append(m)
    return gens


def gsp4_similitude(p, multiplier):
    """Diagonal D with D J D^T = multiplier * J (e.g. diag(1,1,2,2) for p=3)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if multiplier % p == 0:
        raise ValueError("similitude multiplier must be nonzero mod p")
    d = MatFp.diagonal(p, [1, 1, multiplier, multiplier])
    if not preserves_form(d, sp4_form(p), multiplier):
        raise ValueError(f"no wired diagonal similitude for multiplier {multiplier}")
    return d


# -- matrix literal file format: "p k e11 e12 ... ekk", row-major -------------

def format_matrix(m):
    flat = " ".join(str(e) for row in m.entries for e in row)
    return f"{m.p} {m.k} {flat}"


def parse_matrix(text):
    parts = text.split()
    if len(parts) < 2:
        raise ParseError("expected 'p k e11 ... ekk'")
    try:
        nums = [int(x) for x in parts]
    except ValueError as exc:
        raise ParseError(f"non-integer token in matrix literal: {exc}")
    p, k, rest = nums[0], nums[1], nums[2:]
    if not is_prime(p):
        raise ParseError(f"{p} is not prime")
    if len(rest) != k * k:
        raise ParseError(f"expected {k * k} entries, got {len(rest)}")
    return MatFp(p, [rest[i * k:(i + 1) * k] for i in range(k)])
