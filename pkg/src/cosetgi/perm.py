"""Permutations of a fixed finite domain {0, ..., n-1}.

Values are immutable and hashable.  Composition is left-to-right:
``point ^ (p*q) == (point ^ p) ^ q``, matching the right-action convention
used throughout the library.  All textual I/O is 1-based cycle notation;
internal points are 0-based.
"""

from math import lcm

from .errors import DegreeMismatchError, ParseError


class Permutation:
    """A permutation stored as its image tuple: images[i] = i^p."""

    __slots__ = ("images",)

    def __init__(self, images):
        self.images = tuple(images)

    @property
    def degree(self):
        return len(self.images)

    def apply(self, point):
        return self.images[point]

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.images))

    def __mul__(self, other):
        return compose(self, other)

    def __pow__(self, k):
        return power(self, k)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({format_cycles(self)!r}, degree={self.degree})"


def identity(degree):
    return Permutation(range(degree))


def from_images(images, degree=None):
    """Build a permutation from an image list, validating bijectivity."""
    images = tuple(images)
    if degree is not None and len(images) != degree:
        raise DegreeMismatchError(
            f"expected degree {degree}, got image list of length {len(images)}")
    if sorted(images) != list(range(len(images))):
        raise ValueError(f"not a permutation of 0..{len(images) - 1}: {images}")
    return Permutation(images)


def compose(p, q):
    """Left-to-right product: (i)^(pq) = ((i)^p)^q."""
    if p.degree != q.degree:
        raise DegreeMismatchError(f"degree {p.degree} vs {q.degree}")
    qi = q.images
    return Permutation([qi[i] for i in p.images])


def inverse(p):
    inv = [0] * p.degree
    for i, j in enumerate(p.images):
        inv[j] = i
    return Permutation(inv)


def power(p, k):
    if k < 0:
        return power(inverse(p), -k)
    result = identity(p.degree)
    square = p
    while k:
        if k & 1:
            result = compose(result, square)
        square = compose(square, square)
        k >>= 1
    return result


def conjugate(p, q):
    """q^-1 * p * q."""
    return compose(compose(inverse(q), p), q)


def order(p):
    """Least m >= 1 with p^m = identity, via lcm of cycle lengths."""
    return lcm(1, *(length for length in _cycle_lengths(p)))


def _cycle_lengths(p):
    seen = [False] * p.degree
    for start in range(p.degree):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = p.images[j]
            length += 1
        if length > 1:
            yield length


def cycle_type(p):
    """Sorted tuple of nontrivial cycle lengths (fixed points omitted)."""
    return tuple(sorted(_cycle_lengths(p)))


def cycles(p):
    """Disjoint cycles, smallest point first within and across cycles."""
    seen = [False] * p.degree
    out = []
    for start in range(p.degree):
        if seen[start] or p.images[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        j = p.images[start]
        while j != start:
            seen[j] = True
            cyc.append(j)
            j = p.images[j]
        out.append(cyc)
    return out


def format_cycles(p):
    """1-based disjoint-cycle string; identity renders as '()'."""
    cycs = cycles(p)
    if not cycs:
        return "()"
    return "".join("(" + ",".join(str(i + 1) for i in cyc) + ")" for cyc in cycs)


def parse_cycles(text, degree):
    """Parse 1-based cycle notation into a permutation of the given degree.

    Grammar: ``expr := cycle* ; cycle := "(" int ("," int)* ")"``;
    whitespace is ignored, comma separators are required.  The empty
    expression and "()" both denote the identity.
    """
    images = list(range(degree))
    used = set()
    pos = 0
    n = len(text)

    def skip_ws(i):
        while i < n and text[i].isspace():
            i += 1
        return i

    pos = skip_ws(pos)
    while pos < n:
        if text[pos] != "(":
            raise ParseError(f"expected '(' but found {text[pos]!r}", pos)
        pos = skip_ws(pos + 1)
        cyc = []
        while pos < n and text[pos] != ")":
            if cyc:
                if text[pos] != ",":
                    raise ParseError(f"expected ',' or ')' but found {text[pos]!r}", pos)
                pos = skip_ws(pos + 1)
            start = pos
            while pos < n and text[pos].isdigit():
                pos += 1
            if pos == start:
                raise ParseError("expected an integer", pos)
            point = int(text[start:pos])
            if point < 1 or point > degree:
                raise ParseError(f"point {point} out of range 1..{degree}", start)
            if point - 1 in used:
                raise ParseError(f"point {point} repeated", start)
            used.add(point - 1)
            cyc.append(point - 1)
            pos = skip_ws(pos)
        if pos >= n:
            raise ParseError("unclosed cycle", len(text) - 1)
        pos = skip_ws(pos + 1)
        for a, b in zip(cyc, cyc[1:]):
            images[a] = b
        if len(cyc) >= 1:
            images[cyc[-1]] = cyc[0]
    return Permutation(images)
