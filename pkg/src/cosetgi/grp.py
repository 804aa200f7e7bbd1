"""Finite permutation groups with a base and strong generating set (BSGS).

The chain is built deterministically (for a fixed generator order) by an
incremental Schreier-Sims procedure; a new level's base point is the
smallest point moved by the residue that created the level.  Groups are
immutable after construction and cache derived data (element lists, order
buckets, conjugacy class representatives).

Searches in this module (monomorphisms, transporter, normalizer, subgroup
lattice) are deliberately brute-force with cheap prefilters: the library
targets desk-scale groups, |A| up to about 10^6 elements.
"""

import random as _random

from .errors import BudgetExceededError, DegreeMismatchError, NotASubgroupError
from .perm import (
    Permutation,
    compose,
    conjugate,
    cycle_type,
    identity,
    inverse,
    order as perm_order,
)

ELEMENTS_BUDGET = 2 ** 20
AUTOMORPHISM_BUDGET = 5000
LATTICE_BUDGET = 400


def element_key(p):
    """Compact hashable key for a permutation (bytes for degree <= 255)."""
    if len(p.images) <= 255:
        return bytes(p.images)
    return p.images


class _Level:
    __slots__ = ("point", "gens", "transversal", "orbit_list")

    def __init__(self, point, degree):
        self.point = point
        self.gens = []
        e = identity(degree)
        self.transversal = {point: (e, e)}  # point -> (u, u^-1) with base^u = point
        self.orbit_list = [point]


class PermGroup:
    """A permutation group of fixed degree, closed BSGS chain inside."""

    def __init__(self, degree, generators, base_hint=None, known_order=None, name=None):
        self.degree = degree
        self.name = name
        self.gens = [g for g in generators if not g.is_identity()]
        for g in self.gens:
            if g.degree != degree:
                raise DegreeMismatchError(
                    f"generator degree {g.degree} does not match group degree {degree}")
        self._levels = []
        if base_hint:
            for pt in base_hint:
                self._levels.append(_Level(pt, degree))
        self._build(known_order)
        self._order = 1
        for lv in self._levels:
            self._order *= len(lv.transversal)
        if known_order is not None and self._order != known_order:
            raise ValueError(
                f"constructed order {self._order} != expected {known_order}"
                + (f" for {name}" if name else ""))
        self._elements = None
        self._element_keys = None
        self._buckets = None
        self._class_reps = {}
        self._cayley_tree = None

    # -- chain construction ------------------------------------------------

    def _cumulative_gens(self, level):
        out = []
        for lv in self._levels[level:]:
            out.extend(lv.gens)
        return out

    def _sift(self, g, start=0):
        """Reduce g through the chain; returns (residue, stop_level)."""
        for l in range(start, len(self._levels)):
            lv = self._levels[l]
            beta = g.images[lv.point]
            entry = lv.transversal.get(beta)
            if entry is None:
                return g, l
            g = compose(g, entry[1])
        return g, len(self._levels)

    def _expand_orbit(self, level):
        lv = self._levels[level]
        gens = self._cumulative_gens(level)
        trans = lv.transversal
        queue = list(lv.orbit_list)
        i = 0
        while i < len(queue):
            beta = queue[i]
            i += 1
            u = trans[beta][0]
            for s in gens:
                gamma = s.images[beta]
                if gamma not in trans:
                    v = compose(u, s)
                    trans[gamma] = (v, inverse(v))
                    lv.orbit_list.append(gamma)
                    queue.append(gamma)

    def _level_incomplete_witness(self, level):
        """First Schreier generator at this level with nontrivial residue."""
        self._expand_orbit(level)
        lv = self._levels[level]
        gens = self._cumulative_gens(level)
        for beta in lv.orbit_list:
            u, _ = lv.transversal[beta]
            for s in gens:
                gamma = s.images[beta]
                schreier = compose(compose(u, s), lv.transversal[gamma][1])
                if schreier.is_identity():
                    continue
                residue, stop = self._sift(schreier, level + 1)
                if not residue.is_identity():
                    return residue, stop
        return None

    def _current_order(self):
        n = 1
        for lv in self._levels:
            n *= len(lv.transversal)
        return n

    def _build(self, known_order):
        for g in self.gens:
            residue, stop = self._sift(g)
            if residue.is_identity():
                continue
            if stop == len(self._levels):
                self._levels.append(_Level(min(i for i, j in enumerate(residue.images) if i != j),
                                           self.degree))
            self._levels[stop].gens.append(residue)
            for l in range(stop + 1):
                self._expand_orbit(l)
        if known_order is not None and self._current_order() == known_order:
            return
        # verify and repair levels bottom-up until every level is complete
        level = len(self._levels) - 1
        while level >= 0:
            witness = self._level_incomplete_witness(level)
            if witness is None:
                level -= 1
                continue
            residue, stop = witness
            if stop == len(self._levels):
                self._levels.append(_Level(min(i for i, j in enumerate(residue.images) if i != j),
                                           self.degree))
            self._levels[stop].gens.append(residue)
            for l in range(stop + 1):
                self._expand_orbit(l)
            if known_order is not None and self._current_order() == known_order:
                return
            level = stop

    # -- basic queries -------------------------------------------------------

    @property
    def base(self):
        return [lv.point for lv in self._levels]

    def order(self):
        return self._order

    def contains(self, p):
        if p.degree != self.degree:
            return False
        residue, _ = self._sift(p)
        return residue.is_identity()

    def is_trivial(self):
        return self._order == 1

    def elements(self, limit=ELEMENTS_BUDGET):
        """All elements, deterministic order; errors if order exceeds limit."""
        if self._order > limit:
            raise BudgetExceededError(
                f"group order {self._order} exceeds element budget {limit}")
        if self._elements is None:
            out = [identity(self.degree)]
            for lv in reversed(self._levels):
                reps = [lv.transversal[beta][0] for beta in sorted(lv.transversal)]
                out = [compose(prefix, u) for prefix in out for u in reps]
            assert len(out) == self._order
            self._elements = out
        return self._elements

    def element_keys(self):
        if self._element_keys is None:
            self._element_keys = {element_key(p) for p in self.elements()}
        return self._element_keys

    def elements_of_order(self, k, limit=ELEMENTS_BUDGET):
        if self._buckets is None:
            buckets = {}
            for p in self.elements(limit):
                buckets.setdefault(perm_order(p), []).append(p)
            self._buckets = buckets
        return self._buckets.get(k, [])

    def class_reps_of_order(self, k, limit=ELEMENTS_BUDGET):
        """One representative per conjugacy class of elements of order k."""
        if k not in self._class_reps:
            bucket = self.elements_of_order(k, limit)
            gens = self.gens
            seen = set()
            reps = []
            for p in bucket:
                pk = element_key(p)
                if pk in seen:
                    continue
                reps.append(p)
                frontier = [p]
                seen.add(pk)
                while frontier:
                    q = frontier.pop()
                    for g in gens:
                        c = conjugate(q, g)
                        ck = element_key(c)
                        if ck not in seen:
                            seen.add(ck)
                            frontier.append(c)
            self._class_reps[k] = reps
        return self._class_reps[k]

    # -- orbits, stabilizers, primitivity ------------------------------------

    def orbit(self, point):
        seen = {point}
        queue = [point]
        while queue:
            beta = queue.pop()
            for g in self.gens:
                gamma = g.images[beta]
                if gamma not in seen:
                    seen.add(gamma)
                    queue.append(gamma)
        return seen

    def orbits(self):
        remaining = set(range(self.degree))
        out = []
        while remaining:
            pt = min(remaining)
            orb = self.orbit(pt)
            out.append(sorted(orb))
            remaining -= orb
        return out

    def is_transitive(self):
        return self.degree == 1 or len(self.orbit(0)) == self.degree

    def stabilizer(self, point):
        """Pointwise stabilizer of a single point, as a PermGroup."""
        chain = PermGroup(self.degree, self.gens, base_hint=[point])
        stab_gens = []
        for lv in chain._levels[1:]:
            stab_gens.extend(lv.gens)
        return PermGroup(self.degree, reduced_generators(self.degree, stab_gens))

    def minimal_block(self, a, b):
        """Finest G-invariant partition identifying a and b (as point->class rep)."""
        n = self.degree
        parent = list(range(n))

        def find(x):
            root = x
            while parent[root] != root:
                root = parent[root]
            while parent[x] != root:
                parent[x], x = root, parent[x]
            return root

        queue = [(a, b)]
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
        while queue:
            x, y = queue.pop()
            for g in self.gens:
                gx, gy = g.images[x], g.images[y]
                rx, ry = find(gx), find(gy)
                if rx != ry:
                    parent[max(rx, ry)] = min(rx, ry)
                    queue.append((gx, gy))
        return [find(x) for x in range(n)]

    def is_primitive(self):
        if not self.is_transitive():
            raise ValueError("primitivity is only defined for transitive groups")
        if self.degree <= 2:
            return True
        for delta in range(1, self.degree):
            roots = self.minimal_block(0, delta)
            if len(set(roots)) != 1:
                return False
        return True

    def __repr__(self):
        label = self.name or "PermGroup"
        return f"<{label} degree={self.degree} order={self._order}>"


def schreier_sims(degree, generators, base_hint=None, known_order=None, name=None):
    """Construct a PermGroup with a valid BSGS chain."""
    return PermGroup(degree, generators, base_hint=base_hint,
                     known_order=known_order, name=name)


def reduced_generators(degree, gens):
    """Greedy sub-list of gens generating the same group."""
    kept = []
    group = None
    target = PermGroup(degree, gens)
    for g in gens:
        if group is not None and group.contains(g):
            continue
        kept.append(g)
        group = PermGroup(degree, kept)
        if group.order() == target.order():
            break
    return kept


# -- module-level operations (thin wrappers where a method exists) -----------

def order(G):
    return G.order()


def contains(G, p):
    return G.contains(p)


def elements(G, limit=ELEMENTS_BUDGET):
    return G.elements(limit)


def orbit(G, point):
    return G.orbit(point)


def is_transitive(G):
    return G.is_transitive()


def stabilizer(G, point):
    return G.stabilizer(point)


def is_primitive(G):
    return G.is_primitive()


def is_subgroup(G, H):
    """Every generator of H sifts inside G."""
    return all(G.contains(h) for h in H.gens)


def core_of(G, H, limit=ELEMENTS_BUDGET):
    """Largest normal subgroup of G inside H.

    An element of H lies in the core iff its whole G-conjugacy class stays
    inside H; the core is exactly the set of such elements.
    """
    if not is_subgroup(G, H):
        raise NotASubgroupError("H is not a subgroup of G")
    h_elements = H.elements(limit)
    core_members = []
    for h in h_elements:
        inside = True
        seen = {element_key(h)}
        frontier = [h]
        while frontier and inside:
            q = frontier.pop()
            for g in G.gens:
                c = conjugate(q, g)
                ck = element_key(c)
                if ck in seen:
                    continue
                if not H.contains(c):
                    inside = False
                    break
                seen.add(ck)
                frontier.append(c)
        if inside:
            core_members.append(h)
    return PermGroup(G.degree, reduced_generators(G.degree, core_members))


# -- homomorphism search ------------------------------------------------------

class GroupIsoMap:
    """A verified injective homomorphism, given on the source's generators.

    When the source is enumerable the full element-to-element lookup table
    is materialized (source element key -> image permutation).
    """

    def __init__(self, source_gens, images, element_map=None):
        self.source_gens = list(source_gens)
        self.images = list(images)
        self.element_map = element_map

    def apply(self, p):
        if self.element_map is None:
            raise ValueError("no element table available for this map")
        return self.element_map[element_key(p)]

    def image_group(self, name=None):
        degree = self.images[0].degree if self.images else 0
        return PermGroup(degree, self.images, name=name)

    def key(self):
        return tuple(element_key(x) for x in self.images)

    def __repr__(self):
        return f"<GroupIsoMap on {len(self.source_gens)} generators>"


def _cayley_tree(Q):
    """BFS word data for Q's elements: order, parents, and product table."""
    if Q._cayley_tree is not None:
        return Q._cayley_tree
    if Q.order() > ELEMENTS_BUDGET:
        raise BudgetExceededError(
            f"cannot tabulate group of order {Q.order()}")
    gens = Q.gens
    els = [identity(Q.degree)]
    index = {element_key(els[0]): 0}
    parent = [-1]
    via = [-1]
    prod = [None]
    i = 0
    while i < len(els):
        row = []
        for j, g in enumerate(gens):
            w = compose(els[i], g)
            wk = element_key(w)
            k = index.get(wk)
            if k is None:
                k = len(els)
                index[wk] = k
                els.append(w)
                parent.append(i)
                via.append(j)
                prod.append(None)
            row.append(k)
        prod[i] = row
        i += 1
    assert len(els) == Q.order()
    Q._cayley_tree = (els, index, parent, via, prod)
    return Q._cayley_tree


def extend_to_hom(Q, images):
    """Extend gens(Q) -> images to a homomorphism table, or return None.

    The table is consistent on every (element, generator) product, which
    proves the assignment is a homomorphism; it is injective iff the image
    set has |Q| distinct permutations.
    """
    els, index, parent, via, prod = _cayley_tree(Q)
    f = [None] * len(els)
    f[0] = identity(images[0].degree) if images else None
    for e in range(1, len(els)):
        f[e] = compose(f[parent[e]], images[via[e]])
    for e in range(len(els)):
        row = prod[e]
        fe = f[e]
        for j, target in enumerate(row):
            if parent[target] == e and via[target] == j:
                continue  # defining edge, consistent by construction
            if compose(fe, images[j]) != f[target]:
                return None
    return {element_key(els[e]): f[e] for e in range(len(els))}


def is_valid_iso(src, images):
    """True iff gens(src) -> images extends to an injective homomorphism.

    Graph-of-map test: act with pairs (g_i on block 1, image_i on block 2)
    on the disjoint union of the two domains; the assignment extends to a
    homomorphism iff that group's order equals order(src), and is injective
    iff the image group's order also equals order(src).
    """
    if len(images) != len(src.gens):
        raise ValueError(f"expected {len(src.gens)} images, got {len(images)}")
    if not images:
        return src.order() == 1
    d2 = images[0].degree
    for x in images:
        if x.degree != d2:
            raise DegreeMismatchError("image degrees differ")
    d1 = src.degree
    paired = []
    for g, x in zip(src.gens, images):
        paired.append(Permutation(list(g.images) + [d1 + i for i in x.images]))
    if PermGroup(d1 + d2, paired).order() != src.order():
        return False
    return PermGroup(d2, images).order() == src.order()


def _word_checks(gens):
    """Short words with their orders, used to prune image candidates."""
    checks = []
    k = len(gens)
    for j in range(k):
        for i in range(j):
            for word in ((i, j), (i, i, j), (i, j, j)):
                w = identity(gens[0].degree)
                for idx in word:
                    w = compose(w, gens[idx])
                checks.append((word, perm_order(w)))
    by_depth = {}
    for word, target in checks:
        by_depth.setdefault(max(word), []).append((word, target))
    return by_depth


def find_monomorphisms(Q, A, max_found=None, budget=None, up_to_conjugacy=False,
                       image_filter=None):
    """Backtracking search for injective homomorphisms Q -> A.

    Candidates for each generator image are the elements of A with matching
    order; partial assignments are pruned by the orders of short words, and
    survivors are validated by is_valid_iso.  With up_to_conjugacy the first
    generator image ranges over conjugacy class representatives only, which
    still finds every image subgroup up to A-conjugacy (conjugating a
    monomorphism moves its first generator image across its whole class).

    With max_found = None and no budget the returned list is complete (all
    generator-image tuples, modulo the conjugacy reduction if requested).
    Raises BudgetExceededError when the node budget runs out, which is
    distinguishable from an exhaustive empty result.
    """
    src_gens = Q.gens
    if not src_gens:
        table = {element_key(identity(Q.degree)): identity(A.degree)}
        return [GroupIsoMap([], [], table)]
    if A.order() % Q.order() != 0:
        return []
    target_orders = [perm_order(g) for g in src_gens]
    if up_to_conjugacy:
        first = A.class_reps_of_order(target_orders[0])
    else:
        first = A.elements_of_order(target_orders[0])
    candidates = [first] + [A.elements_of_order(o) for o in target_orders[1:]]
    checks = _word_checks(src_gens)
    found = []
    visited = 0

    def passes_words(images, depth):
        for word, target in checks.get(depth, ()):
            w = images[word[0]]
            for idx in word[1:]:
                w = compose(w, images[idx])
            if perm_order(w) != target:
                return False
        return True

    def descend(images):
        nonlocal visited
        depth = len(images)
        if depth == len(src_gens):
            table = extend_to_hom(Q, images)
            if table is None or len({element_key(x) for x in table.values()}) != Q.order():
                return False
            if not is_valid_iso(Q, images):
                return False
            m = GroupIsoMap(src_gens, images, table)
            if image_filter is not None and not image_filter(m):
                return False
            found.append(m)
            return max_found is not None and len(found) >= max_found
        for x in candidates[depth]:
            visited += 1
            if budget is not None and visited > budget:
                raise BudgetExceededError(
                    f"monomorphism search exceeded budget {budget}")
            images.append(x)
            if passes_words(images, depth):
                if descend(images):
                    images.pop()
                    return True
            images.pop()
        return False

    descend([])
    return found


def transporter(A, X, Y, budget=ELEMENTS_BUDGET):
    """Some a in A with X^a = Y, or None if no such element exists.

    Brute force over elements(A) with early exit; prefiltered by order and
    by the cycle-type multisets of X and Y, which conjugation preserves.
    """
    if X.order() != Y.order():
        return None
    if X.order() <= 20000:
        types_x = sorted(cycle_type(p) for p in X.elements())
        types_y = sorted(cycle_type(p) for p in Y.elements())
        if types_x != types_y:
            return None
    xgens = reduced_generators(X.degree, X.gens)
    for a in A.elements(budget):
        a_inv = inverse(a)
        if all(Y.contains(compose(compose(a_inv, x), a)) for x in xgens):
            return a
    return None


def normalizer(A, X, budget=ELEMENTS_BUDGET):
    """N_A(X) = {a in A : X^a = X}, by sweep over elements(A)."""
    if A.order() > budget:
        raise BudgetExceededError(
            f"normalizer sweep over {A.order()} elements exceeds budget {budget}")
    xgens = reduced_generators(X.degree, X.gens)
    n_gens = []
    n_group = PermGroup(A.degree, [])
    for a in A.elements(budget):
        a_inv = inverse(a)
        if all(X.contains(compose(compose(a_inv, x), a)) for x in xgens):
            if not n_group.contains(a):
                n_gens.append(a)
                n_group = PermGroup(A.degree, n_gens)
    return n_group


def automorphism_group_of(G, budget=AUTOMORPHISM_BUDGET):
    """All automorphisms of G as GroupIsoMaps with full element tables.

    Found as monomorphisms G -> G (injective forces surjective); the result
    is checked to be closed under composition.
    """
    if G.order() > budget:
        raise BudgetExceededError(
            f"automorphism search for order {G.order()} exceeds budget {budget}")
    maps = find_monomorphisms(G, G)
    by_key = {m.key(): m for m in maps}
    rng = _random.Random(0)
    pairs = [(a, b) for a in maps for b in maps] if len(maps) <= 50 else [
        (rng.choice(maps), rng.choice(maps)) for _ in range(500)]
    for m1, m2 in pairs:
        composed = tuple(element_key(m2.apply(x)) for x in m1.images)
        assert composed in by_key, "automorphism list not closed under composition"
    return maps


def _mulclose(degree, gens, cap=None):
    """Element list of <gens>, BFS closure; None if cap exceeded."""
    els = [identity(degree)]
    seen = {element_key(els[0])}
    i = 0
    while i < len(els):
        for g in gens:
            w = compose(els[i], g)
            wk = element_key(w)
            if wk not in seen:
                seen.add(wk)
                els.append(w)
                if cap is not None and len(els) > cap:
                    return None
        i += 1
    return els


def subgroup_lattice(G, budget=LATTICE_BUDGET):
    """One representative PermGroup per conjugacy class of subgroups of G.

    Built by closing the cyclic subgroups under pairwise joins, layer by
    layer, then fusing conjugate element sets.
    """
    if G.order() > budget:
        raise BudgetExceededError(
            f"subgroup lattice for order {G.order()} exceeds budget {budget}")
    els = G.elements()
    by_key = {element_key(p): p for p in els}

    def set_key(elems):
        return frozenset(element_key(p) for p in elems)

    cyclics = {}
    for p in els:
        sub = [identity(G.degree)]
        q = p
        while not q.is_identity():
            sub.append(q)
            q = compose(q, p)
        cyclics.setdefault(set_key(sub), sub)

    subgroups = dict(cyclics)
    subgroups.setdefault(set_key(els), els)
    frontier = list(cyclics.items())
    cyclic_items = list(cyclics.items())
    while frontier:
        new_frontier = []
        for skey, selems in frontier:
            sgens = [p for p in selems if not p.is_identity()]
            for ckey, celems in cyclic_items:
                if ckey <= skey:
                    continue
                joined = _mulclose(G.degree, sgens + [c for c in celems
                                                      if not c.is_identity()],
                                   cap=G.order())
                jkey = set_key(joined)
                if jkey not in subgroups:
                    subgroups[jkey] = joined
                    new_frontier.append((jkey, joined))
        frontier = new_frontier

    # fuse conjugacy classes of subgroups
    unseen = set(subgroups)
    reps = []
    for skey in sorted(subgroups, key=lambda k: (len(k), sorted(k))):
        if skey not in unseen:
            continue
        cls = {skey}
        queue = [skey]
        while queue:
            tkey = queue.pop()
            for g in G.gens:
                ck = frozenset(element_key(conjugate(by_key[ek], g)) for ek in tkey)
                if ck not in cls:
                    cls.add(ck)
                    queue.append(ck)
        unseen -= cls
        members = subgroups[skey]
        reps.append(PermGroup(G.degree,
                              reduced_generators(G.degree,
                                                 [p for p in members
                                                  if not p.is_identity()])))
    reps.sort(key=lambda H: (H.order(), sorted(element_key(p) for p in H.elements())))
    return reps


def is_normal(G, H):
    """H normal in G, tested by conjugating H's generators by G's."""
    return all(H.contains(conjugate(h, g)) for h in H.gens for g in G.gens)
