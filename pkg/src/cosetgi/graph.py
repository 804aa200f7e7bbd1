"""Dense digraph values: n vertices, adjacency bit-rows, no loops.

Rows are Python ints used as bitmasks, giving O(1) adjacency tests and fast
popcount-based partition refinement.  "Connected" means weakly connected
(components of the underlying undirected graph).
"""

from .errors import ParseError


class DiGraph:
    """Immutable loop-free digraph on vertices 0..n-1."""

    __slots__ = ("n", "rows", "cols", "_hash", "_canon")

    def __init__(self, n, rows):
        self.n = n
        self._canon = None
        rows = tuple(rows)
        if len(rows) != n:
            raise ValueError(f"expected {n} adjacency rows, got {len(rows)}")
        for u, row in enumerate(rows):
            if row >> n:
                raise ValueError(f"row {u} has bits beyond vertex {n - 1}")
            if (row >> u) & 1:
                raise ValueError(f"loop at vertex {u}")
        self.rows = rows
        cols = [0] * n
        for u, row in enumerate(rows):
            m = row
            while m:
                v = (m & -m).bit_length() - 1
                cols[v] |= 1 << u
                m &= m - 1
        self.cols = tuple(cols)
        self._hash = None

    @classmethod
    def from_edges(cls, n, edges, undirected=False):
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            if undirected:
                rows[v] |= 1 << u
        return cls(n, rows)

    def has_edge(self, u, v):
        return (self.rows[u] >> v) & 1 == 1

    def edges(self):
        out = []
        for u in range(self.n):
            m = self.rows[u]
            while m:
                v = (m & -m).bit_length() - 1
                out.append((u, v))
                m &= m - 1
        return out

    def arc_count(self):
        return sum(row.bit_count() for row in self.rows)

    def out_degree(self, u):
        return self.rows[u].bit_count()

    def in_degree(self, u):
        return self.cols[u].bit_count()

    def relabel(self, perm):
        """Image graph: edge (u,v) becomes (u^perm, v^perm)."""
        rows = [0] * self.n
        img = perm.images
        for u in range(self.n):
            m = self.rows[u]
            r = 0
            while m:
                v = (m & -m).bit_length() - 1
                r |= 1 << img[v]
                m &= m - 1
            rows[img[u]] = r
        return DiGraph(self.n, rows)

    def is_automorphism(self, perm):
        img = perm.images
        for u in range(self.n):
            m = self.rows[u]
            r = 0
            while m:
                v = (m & -m).bit_length() - 1
                r |= 1 << img[v]
                m &= m - 1
            if r != self.rows[img[u]]:
                return False
        return True

    def __eq__(self, other):
        return isinstance(other, DiGraph) and self.n == other.n and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.rows))
        return self._hash

    def __repr__(self):
        kind = "undirected" if is_undirected(self) else "directed"
        return f"<DiGraph n={self.n} arcs={self.arc_count()} {kind}>"


def is_undirected(graph):
    return graph.rows == graph.cols


def complement(graph):
    full = (1 << graph.n) - 1
    return DiGraph(graph.n,
                   [full & ~graph.rows[u] & ~(1 << u) for u in range(graph.n)])


def out_degree_sequence(graph):
    return [graph.out_degree(u) for u in range(graph.n)]


def in_degree_sequence(graph):
    return [graph.in_degree(u) for u in range(graph.n)]


def weak_components(graph):
    """Partition into maximal weakly connected vertex sets (sorted lists)."""
    n = graph.n
    both = [graph.rows[u] | graph.cols[u] for u in range(n)]
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start]:
            continue
        comp = []
        stack = [start]
        seen[start] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            m = both[u]
            while m:
                v = (m & -m).bit_length() - 1
                m &= m - 1
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)
        out.append(sorted(comp))
    return out


def is_connected(graph):
    return len(weak_components(graph)) == 1


def complete_graph(n):
    full = (1 << n) - 1
    return DiGraph(n, [full & ~(1 << u) for u in range(n)])


def empty_graph(n):
    return DiGraph(n, [0] * n)


def directed_cycle(n):
    return DiGraph(n, [1 << ((u + 1) % n) for u in range(n)])


# -- edge-list text format ----------------------------------------------------
# first line: "n m directed|undirected", then m lines "u v" with 1-based points.

def format_edge_list(graph):
    undirected = is_undirected(graph)
    if undirected:
        pairs = [(u, v) for u, v in graph.edges() if u < v]
    else:
        pairs = graph.edges()
    kind = "undirected" if undirected else "directed"
    lines = [f"{graph.n} {len(pairs)} {kind}"]
    lines.extend(f"{u + 1} {v + 1}" for u, v in pairs)
    return "\n".join(lines) + "\n"


def parse_edge_list(text):
    lines = [ln for ln in text.splitlines()]
    meaningful = [(i, ln.strip()) for i, ln in enumerate(lines) if ln.strip()]
    if not meaningful:
        raise ParseError("empty edge list")
    header_pos, header = meaningful[0]
    parts = header.split()
    if len(parts) != 3 or parts[2] not in ("directed", "undirected"):
        raise ParseError(
            f"expected header 'n m directed|undirected', got {header!r}",
            header_pos + 1)
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(f"bad counts in header {header!r}", header_pos + 1)
    undirected = parts[2] == "undirected"
    body = meaningful[1:]
    if len(body) != m:
        raise ParseError(f"expected {m} edge lines, found {len(body)}",
                         header_pos + 1)
    edges = []
    for pos, ln in body:
        bits = ln.split()
        if len(bits) != 2:
            raise ParseError(f"expected 'u v', got {ln!r}", pos + 1)
        try:
            u, v = int(bits[0]), int(bits[1])
        except ValueError:
            raise ParseError(f"non-integer endpoint in {ln!r}", pos + 1)
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"endpoint out of range in {ln!r}", pos + 1)
        edges.append((u - 1, v - 1))
    return DiGraph.from_edges(n, edges, undirected=undirected)


def to_dot(graph, name="G"):
    undirected = is_undirected(graph)
    arrow = "--" if undirected else "->"
    kind = "graph" if undirected else "digraph"
    lines = [f"{kind} {name} {{"]
    for u in range(graph.n):
        lines.append(f"  v{u + 1};")
    for u, v in graph.edges():
        if undirected and u > v:
            continue
        lines.append(f"  v{u + 1} {arrow} v{v + 1};")
    lines.append("}")
    return "\n".join(lines) + "\n"
