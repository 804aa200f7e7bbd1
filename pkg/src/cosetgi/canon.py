"""Graph automorphism groups, canonical forms, and isomorphism testing.

Individualization-refinement search.  Refinement is one-dimensional
Weisfeiler-Leman on ordered partitions: cells split by the vector of
(out-count, in-count) toward every cell, iterated to a fixpoint, with
sub-cells ordered by count vector so the procedure commutes with
relabeling.  The search individualizes one vertex of the first smallest
non-singleton cell at a time.

Leaves are compared by the bit sequence of the relabeled adjacency matrix
read in expanding-submatrix order (all arcs among the first k vertices
before any arc touching vertex k+1); the leading singleton cells of an
inner node determine a prefix of that sequence for every leaf below it,
which makes subtree pruning against the current best leaf sound.  The
canonical labeling is the leaf realizing the smallest sequence.  Pairs of
equal leaves yield automorphisms; discovered automorphisms prune sibling
branches by orbits (only generators fixing the node's individualized
prefix pointwise are used, which keeps the pruning sound).

Every returned automorphism and isomorphism is re-verified edge by edge.
"""

from .errors import BudgetExceededError
from .grp import PermGroup
from .perm import Permutation

DEFAULT_VERTEX_CAP = 2048


def unit_partition(n):
    return [list(range(n))]


def validate_partition(n, cells):
    seen = set()
    for cell in cells:
        if not cell:
            raise ValueError("empty cell")
        for v in cell:
            if v in seen or not (0 <= v < n):
                raise ValueError("cells must partition the vertex set")
            seen.add(v)
    if len(seen) != n:
        raise ValueError("cells must cover the vertex set")


def refine(graph, cells):
    """Coarsest equitable refinement of an ordered partition.

    Output cells are sorted internally; sub-cells produced by a split are
    ordered by their count-vector signature, so refine(g^s, p^s) equals
    refine(g, p)^s for any relabeling s.
    """
    rows, cols = graph.rows, graph.cols
    directed = rows != cols
    cells = [sorted(c) for c in cells]
    while True:
        masks = []
        for c in cells:
            m = 0
            for v in c:
                m |= 1 << v
            masks.append(m)
        new_cells = []
        changed = False
        for c in cells:
            if len(c) == 1:
                new_cells.append(c)
                continue
            groups = {}
            for v in c:
                rv = rows[v]
                if directed:
                    cv = cols[v]
                    sig = tuple((rv & m).bit_count() for m in masks) + \
                        tuple((cv & m).bit_count() for m in masks)
                else:
                    sig = tuple((rv & m).bit_count() for m in masks)
                groups.setdefault(sig, []).append(v)
            if len(groups) == 1:
                new_cells.append(c)
            else:
                changed = True
                for sig in sorted(groups):
                    new_cells.append(groups[sig])
        cells = new_cells
        if not changed:
            return cells


def is_equitable(graph, cells):
    return refine(graph, cells) == [sorted(c) for c in cells]


class Certificate:
    """Canonical byte string: header plus relabeled adjacency bits, row-major."""

    __slots__ = ("n", "directed", "matrix_bytes")

    def __init__(self, n, directed, matrix_bytes):
        self.n = n
        self.directed = directed
        self.matrix_bytes = matrix_bytes

    def to_bytes(self):
        return (b"CG1" + self.n.to_bytes(4, "big")
                + (b"\x01" if self.directed else b"\x00") + self.matrix_bytes)

    def hex(self):
        return self.to_bytes().hex()

    def __eq__(self, other):
        return (isinstance(other, Certificate) and self.n == other.n
                and self.directed == other.directed
                and self.matrix_bytes == other.matrix_bytes)

    def __hash__(self):
        return hash((self.n, self.directed, self.matrix_bytes))

    def __repr__(self):
        return f"<Certificate n={self.n} {self.to_bytes()[:16].hex()}...>"


class _Search:
    def __init__(self, graph, initial_cells):
        self.graph = graph
        self.n = graph.n
        self.rows = graph.rows
        self.cols = graph.cols
        self.initial = initial_cells
        self.aut_gens = []
        self.aut_group = PermGroup(self.n, [])
        self.first_bits = None
        self.first_lab = None
        self.best_bits = None
        self.best_lab = None

    # -- leaf machinery ----------------------------------------------------

    def _bits_for(self, lab, upto):
        """Expanding-submatrix bits over the first `upto` labeled vertices."""
        rows = self.rows
        bits = []
        for k in range(upto):
            vk = lab[k]
            rk = rows[vk]
            for j in range(k):
                vj = lab[j]
                bits.append(((rk >> vj) & 1) | ((rows[vj] >> vk) & 1) << 1)
        return bits

    def _record_automorphism(self, lab_a, lab_b):
        """Automorphism mapping leaf b onto leaf a (equal leaf strings)."""
        pos_b = [0] * self.n
        for i, v in enumerate(lab_b):
            pos_b[v] = i
        images = [lab_a[pos_b[u]] for u in range(self.n)]
        gamma = Permutation(images)
        assert self.graph.is_automorphism(gamma)
        if not gamma.is_identity() and not self.aut_group.contains(gamma):
            self.aut_gens.append(gamma)
            self.aut_group = PermGroup(self.n, self.aut_gens)

    def _leaf(self, cells):
        lab = [c[0] for c in cells]
        bits = self._bits_for(lab, self.n)
        if self.first_bits is None:
            self.first_bits = bits
            self.first_lab = lab
            self.best_bits = bits
            self.best_lab = lab
            return
        if bits == self.first_bits:
            self._record_automorphism(self.first_lab, lab)
        if bits == self.best_bits:
            if lab != self.best_lab:
                self._record_automorphism(self.best_lab, lab)
        elif bits < self.best_bits:
            self.best_bits = bits
            self.best_lab = lab

    # -- tree walk -----------------------------------------------------------

    def _node(self, cells, prefix):
        cells = refine(self.graph, cells)
        lead = 0
        while lead < len(cells) and len(cells[lead]) == 1:
            lead += 1
        if self.best_bits is not None and lead > 0:
            lab = [c[0] for c in cells[:lead]]
            partial = self._bits_for(lab, lead)
            if partial > self.best_bits[:len(partial)]:
                return
        if lead == len(cells):
            self._leaf(cells)
            return
        target_size = min(len(c) for c in cells if len(c) > 1)
        t = next(i for i, c in enumerate(cells) if len(c) == target_size and len(c) > 1)
        target = cells[t]
        processed = []
        for v in target:
            if self._in_processed_orbit(v, processed, prefix):
                continue
            processed.append(v)
            child = (cells[:t] + [[v]] + [[w for w in target if w != v]]
                     + cells[t + 1:])
            self._node(child, prefix + [v])

    def _in_processed_orbit(self, v, processed, prefix):
        if not processed:
            return False
        fixing = [g for g in self.aut_gens
                  if all(g.images[p] == p for p in prefix)]
        if not fixing:
            return False
        orbit = {v}
        queue = [v]
        done = set(processed)
        while queue:
            u = queue.pop()
            for g in fixing:
                w = g.images[u]
                if w in done:
                    return True
                if w not in orbit:
                    orbit.add(w)
                    queue.append(w)
        return False

    def run(self):
        self._node(self.initial, [])
        return self


def _search(graph, initial_partition=None, cap=DEFAULT_VERTEX_CAP):
    if graph.n > cap:
        raise BudgetExceededError(
            f"graph on {graph.n} vertices exceeds the canonical-labeling cap {cap}")
    if initial_partition is None:
        cells = unit_partition(graph.n)
        cached = getattr(graph, "_canon", None)
        if cached is not None:
            return cached
    else:
        validate_partition(graph.n, initial_partition)
        cells = [sorted(c) for c in initial_partition]
    if graph.n == 0:
        raise ValueError("empty graph has no canonical search")
    done = _Search(graph, cells).run()
    if initial_partition is None:
        graph._canon = done
    return done


def automorphisms(graph, initial_partition=None, cap=DEFAULT_VERTEX_CAP):
    """Aut(graph) as a PermGroup (optionally color-preserving)."""
    s = _search(graph, initial_partition, cap)
    for g in s.aut_gens:
        assert graph.is_automorphism(g)
    return s.aut_group


def canonical_labeling(graph, initial_partition=None, cap=DEFAULT_VERTEX_CAP):
    """Permutation sending each vertex to its canonical position."""
    s = _search(graph, initial_partition, cap)
    pos = [0] * graph.n
    for i, v in enumerate(s.best_lab):
        pos[v] = i
    return Permutation(pos)


def canonical_form(graph, initial_partition=None, cap=DEFAULT_VERTEX_CAP):
    """Relabeling-invariant certificate; equal certificates iff isomorphic."""
    sigma = canonical_labeling(graph, initial_partition, cap)
    canon = graph.relabel(sigma)
    acc = 0
    shift = 0
    n = graph.n
    for u in range(n):
        acc |= canon.rows[u] << shift
        shift += n
    nbytes = (n * n + 7) // 8
    # rows were packed little-endian per bit; serialize the whole block
    return Certificate(n, graph.rows != graph.cols,
                       acc.to_bytes(nbytes, "little") if nbytes else b"")


def isomorphism(g1, g2, cap=DEFAULT_VERTEX_CAP):
    """A vertex bijection mapping g1's arcs exactly onto g2's, or None."""
    if g1.n != g2.n or g1.arc_count() != g2.arc_count():
        return None
    if sorted(r.bit_count() for r in g1.rows) != sorted(r.bit_count() for r in g2.rows):
        return None
    if canonical_form(g1, cap=cap) != canonical_form(g2, cap=cap):
        return None
    s1 = canonical_labeling(g1, cap=cap)
    s2 = canonical_labeling(g2, cap=cap)
    # g1 vertex u sits at canonical position s1[u]; send it to g2's vertex there
    lab2 = [0] * g2.n
    for v, i in enumerate(s2.images):
        lab2[i] = v
    mapping = Permutation([lab2[s1.images[u]] for u in range(g1.n)])
    assert g1.relabel(mapping) == g2
    return mapping
