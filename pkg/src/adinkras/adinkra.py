"""Adinkras: construction, validation, switching and graph comparison.

An Adinkra is stored as an edge-colored graph plus a +/-1 signature.  Vertex
labels are packed bit vectors (coset representatives); the vertex order is
always bosons first (even-weight labels), which fixes the block structure of
the adjacency matrix downstream.
"""

from __future__ import annotations

import json

from .codes import BinaryCode, BitVector, Gf2Matrix, gf2_kernel, gf2_solve, min_weight
from .config import MAX_CLASS_DIMENSION, MAX_CUBE_DIMENSION, MAX_QUOTIENT_VERTICES, check_guard

Edge = tuple[int, int, int]  # (u, v, color), u < v vertex indices, color 1-based


class AdinkraError(ValueError):
    """Structural violation or unsupported construction."""


class InfeasibleSignature(AdinkraError):
    """No totally odd signature exists (the code is not doubly even)."""


# ---------------------------------------------------------------------------
# Colored graphs
# ---------------------------------------------------------------------------

class ColoredGraph:
    """Edge-colored graph on labeled vertices.

    vertices: packed labels of length `n_bits`, in the fixed vertex order.
    edges: sorted tuple of (u, v, color) with u < v.
    """

    def __init__(self, n_colors: int, n_bits: int, vertices: list[int], edges: list[Edge]):
        self.n_colors = n_colors
        self.n_bits = n_bits
        self.vertices = tuple(vertices)
        for (u, v, c) in edges:
            if not (0 <= u < v < len(self.vertices)):
                raise AdinkraError(f"bad edge endpoints ({u},{v})")
            if not 1 <= c <= n_colors:
                raise AdinkraError(f"bad edge color {c}")
        self.edges = tuple(sorted(set(edges)))
        self._index = {lab: i for i, lab in enumerate(self.vertices)}
        if len(self._index) != len(self.vertices):
            raise AdinkraError("duplicate vertex labels")
        self._color_maps: list[dict[int, int]] | None = None

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def label(self, i: int) -> BitVector:
        return BitVector(self.n_bits, self.vertices[i])

    def labels(self) -> list[str]:
        return [format(v, f"0{self.n_bits}b") for v in self.vertices]

    def parity(self, i: int) -> int:
        return self.vertices[i].bit_count() & 1

    def color_maps(self) -> list[dict[int, int]]:
        """Per color (1-based; index 0 unused), the map vertex -> neighbor.

        Only well-defined on color-regular graphs; validate() reports the
        violations instead of raising.
        """
        if self._color_maps is None:
            maps: list[dict[int, int]] = [dict() for _ in range(self.n_colors + 1)]
            for (u, v, c) in self.edges:
                if u in maps[c] or v in maps[c]:
                    raise AdinkraError(f"color {c} is not a perfect matching")
                maps[c][u] = v
                maps[c][v] = u
            self._color_maps = maps
        return self._color_maps

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        adj: list[list[int]] = [[] for _ in self.vertices]
        for (u, v, _) in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        seen = [False] * self.n_vertices
        stack = [0]
        seen[0] = True
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        return all(seen)


def _boson_first(labels: list[int]) -> list[int]:
    return sorted(labels, key=lambda x: (x.bit_count() & 1, x))


# ---------------------------------------------------------------------------
# Adinkras
# ---------------------------------------------------------------------------

class Adinkra:
    """Colored graph with a totally odd signature, bosons ordered first."""

    def __init__(self, graph: ColoredGraph, signature: dict[Edge, int],
                 code: BinaryCode | None = None):
        if set(signature) != set(graph.edges):
            raise AdinkraError("signature domain differs from the edge set")
        if any(s not in (1, -1) for s in signature.values()):
            raise AdinkraError("signature values must be +1 or -1")
        parities = [graph.parity(i) for i in range(graph.n_vertices)]
        n_bosons = sum(1 for p in parities if p == 0)
        if parities != [0] * n_bosons + [1] * (graph.n_vertices - n_bosons):
            raise AdinkraError("vertex order must list bosons (even labels) first")
        if 2 * n_bosons != graph.n_vertices:
            raise AdinkraError("boson and fermion counts differ")
        self.graph = graph
        self.signature = dict(signature)
        self.code = code
        self.n_bosons = n_bosons
        self._adj: list[list[tuple[int, int]]] | None = None

    @property
    def n_colors(self) -> int:
        return self.graph.n_colors

    @property
    def n_vertices(self) -> int:
        return self.graph.n_vertices

    def boson_order(self) -> list[int]:
        return list(range(self.n_bosons))

    def fermion_order(self) -> list[int]:
        return list(range(self.n_bosons, self.n_vertices))

    def sign(self, u: int, v: int, c: int) -> int:
        return self.signature[(u, v, c) if u < v else (v, u, c)]

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Per vertex, list of (neighbor, sign) over all incident edges."""
        if self._adj is None:
            adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n_vertices)]
            for (u, v, c) in self.graph.edges:
                s = self.signature[(u, v, c)]
                adj[u].append((v, s))
                adj[v].append((u, s))
            self._adj = adj
        return self._adj

    def __repr__(self) -> str:
        return (f"Adinkra(N={self.n_colors}, V={self.n_vertices}"
                + (f", code={self.code!r}" if self.code else "") + ")")


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

class Violation:
    def __init__(self, kind: str, detail: str, payload=None):
        self.kind = kind
        self.detail = detail
        self.payload = payload

    def __repr__(self) -> str:
        return f"[{self.kind}] {self.detail}"


class ValidationReport:
    def __init__(self, violations: list[Violation]):
        self.violations = violations

    @property
    def ok(self) -> bool:
        return not self.violations

    def of_kind(self, kind: str) -> list[Violation]:
        return [v for v in self.violations if v.kind == kind]

    def __repr__(self) -> str:
        if self.ok:
            return "ValidationReport(clean)"
        return "ValidationReport(\n  " + "\n  ".join(map(repr, self.violations)) + "\n)"


def _bicolor_cycles(g: ColoredGraph, ca: int, cb: int,
                    violations: list[Violation] | None = None) -> list[list[Edge]]:
    """Decompose the two-color subgraph into cycles, as edge lists.

    Cycles longer than 4 are reported into `violations` when provided.
    """
    maps = g.color_maps()
    ma, mb = maps[ca], maps[cb]
    seen = [False] * g.n_vertices
    cycles = []
    for start in range(g.n_vertices):
        if seen[start] or (start not in ma and start not in mb):
            continue
        cycle: list[Edge] = []
        v = start
        use_a = True
        while True:
            seen[v] = True
            m = ma if use_a else mb
            if v not in m:
                break  # path, not a cycle: color-regularity violation reported elsewhere
            w = m[v]
            c = ca if use_a else cb
            cycle.append((min(v, w), max(v, w), c))
            v = w
            use_a = not use_a
            if v == start and use_a:
                break
        if v != start or not cycle:
            continue
        if len(cycle) != 4 and violations is not None:
            violations.append(Violation(
                "bicolor_cycle_length",
                f"colors ({ca},{cb}): cycle of length {len(cycle)} through vertex {start}",
                cycle))
        cycles.append(cycle)
    return cycles


def validate_colored(g: ColoredGraph, signature: dict[Edge, int] | None = None) -> ValidationReport:
    """Check all Adinkra conditions; report every violation found."""
    violations: list[Violation] = []

    # One edge of each color at every vertex.
    count = [[0] * (g.n_colors + 1) for _ in range(g.n_vertices)]
    for (u, v, c) in g.edges:
        count[u][c] += 1
        count[v][c] += 1
    for i in range(g.n_vertices):
        for c in range(1, g.n_colors + 1):
            if count[i][c] != 1:
                violations.append(Violation(
                    "color_regularity",
                    f"vertex {i} has {count[i][c]} edges of color {c}", (i, c)))

    # Bipartite with respect to label parity.
    for (u, v, c) in g.edges:
        if g.parity(u) == g.parity(v):
            violations.append(Violation(
                "bipartite", f"edge ({u},{v},{c}) joins same-parity labels", (u, v, c)))

    if any(v.kind == "color_regularity" for v in violations):
        return ValidationReport(violations)  # cycle structure is meaningless

    # Bicolor subgraphs decompose into 4-cycles, each with odd dash count.
    for ca in range(1, g.n_colors + 1):
        for cb in range(ca + 1, g.n_colors + 1):
            for cycle in _bicolor_cycles(g, ca, cb, violations):
                if len(cycle) != 4:
                    continue
                if signature is not None:
                    dashes = sum(1 for e in cycle if signature[e] == -1)
                    if dashes % 2 == 0:
                        violations.append(Violation(
                            "even_cycle",
                            f"bicolor ({ca},{cb}) cycle {cycle} has {dashes} dashed edges",
                            cycle))
    return ValidationReport(violations)


def validate(a: Adinkra) -> ValidationReport:
    return validate_colored(a.graph, a.signature)


# ---------------------------------------------------------------------------
# Hypercubes and prisms
# ---------------------------------------------------------------------------

def one_cube() -> Adinkra:
    g = ColoredGraph(1, 1, [0, 1], [(0, 1, 1)])
    return Adinkra(g, {(0, 1, 1): 1}, code=BinaryCode(1, []))


def prism(a: Adinkra) -> Adinkra:
    """The (N+1)-color prism: two copies joined by a new color, dashed on bosons."""
    g = a.graph
    old = g.vertices
    labels = [x << 1 for x in old] + [(x << 1) | 1 for x in old]
    order = _boson_first(labels)
    index = {lab: i for i, lab in enumerate(order)}
    new_edges: dict[Edge, int] = {}

    def put(lu: int, lv: int, c: int, s: int) -> None:
        iu, iv = index[lu], index[lv]
        if iu > iv:
            iu, iv = iv, iu
        new_edges[(iu, iv, c)] = s

    for (u, v, c) in g.edges:
        s = a.signature[(u, v, c)]
        put(old[u] << 1, old[v] << 1, c, s)
        put((old[u] << 1) | 1, (old[v] << 1) | 1, c, s)
    for i, x in enumerate(old):
        # New color: solid on fermions, dashed on bosons.
        s = 1 if g.parity(i) else -1
        put(x << 1, (x << 1) | 1, g.n_colors + 1, s)

    code = None
    if a.code is not None:
        # Appending a zero coordinate to every codeword keeps the quotient picture.
        gens = [BitVector(a.code.length + 1, w.value << 1) for w in a.code.generators]
        code = BinaryCode(a.code.length + 1, gens)
    ng = ColoredGraph(g.n_colors + 1, g.n_bits + 1, order, list(new_edges))
    return Adinkra(ng, new_edges, code=code)


def hypercube_adinkra(n: int) -> Adinkra:
    """The n-cube Adinkra, built by iterating the prism from the 1-cube."""
    if n < 1:
        raise AdinkraError("need n >= 1")
    check_guard(n <= MAX_CUBE_DIMENSION, f"hypercube dimension {n} too large")
    a = one_cube()
    for _ in range(n - 1):
        a = prism(a)
    return a


# ---------------------------------------------------------------------------
# Quotients by codes
# ---------------------------------------------------------------------------

def _syndrome_map(c: BinaryCode) -> tuple[Gf2Matrix, dict[int, int]]:
    """Parity-check matrix H and (syndrome -> coset id) using H's row space."""
    h_rows = gf2_kernel(c.generator_matrix()) if c.dimension else \
        [BitVector.unit(c.length, i) for i in range(1, c.length + 1)]
    h = Gf2Matrix(len(h_rows), c.length, [r.value for r in h_rows])
    return h, {}


def quotient_graph(n: int, c: BinaryCode) -> ColoredGraph:
    """Quotient of the n-cube by c: cosets as vertices, one color per coordinate."""
    if c.length != n:
        raise AdinkraError(f"code length {c.length} differs from cube dimension {n}")
    if c.dimension and min_weight(c) <= 2:
        raise AdinkraError("code has a weight-1 or weight-2 word; "
                           "the quotient would have loops or parallel edges")
    n_v = 1 << (n - c.dimension)
    check_guard(n_v <= MAX_QUOTIENT_VERTICES, f"quotient needs {n_v} vertices")

    from .codes import cosets as coset_reps
    reps = [r.value for r in coset_reps(c)]
    order = _boson_first(reps)
    index = {lab: i for i, lab in enumerate(order)}

    h, syn_to_idx = _syndrome_map(c)
    for lab, i in index.items():
        syn_to_idx[h.mul_vector(BitVector(n, lab)).value] = i

    edges = set()
    for i, lab in enumerate(order):
        for j in range(1, n + 1):
            w = lab ^ (1 << (n - j))
            k = syn_to_idx[h.mul_vector(BitVector(n, w)).value]
            edges.add((min(i, k), max(i, k), j))
    return ColoredGraph(n, n, order, sorted(edges))


def _cycle_equations(g: ColoredGraph) -> tuple[list[Edge], list[int]]:
    """Edge order and one packed GF(2) row per bicolor 4-cycle."""
    edges = list(g.edges)
    pos = {e: i for i, e in enumerate(edges)}
    m = len(edges)
    rows = []
    for ca in range(1, g.n_colors + 1):
        for cb in range(ca + 1, g.n_colors + 1):
            for cycle in _bicolor_cycles(g, ca, cb):
                if len(cycle) != 4:
                    raise AdinkraError("bicolor subgraph is not a union of 4-cycles")
                row = 0
                for e in cycle:
                    row |= 1 << (m - 1 - pos[e])
                rows.append(row)
    return edges, rows


def solve_totally_odd(g: ColoredGraph) -> dict[Edge, int] | None:
    """A totally odd signature as a GF(2) solution, or None when infeasible."""
    edges, rows = _cycle_equations(g)
    m = len(edges)
    system = Gf2Matrix(len(rows), m, rows)
    x = gf2_solve(system, BitVector.ones(len(rows)))
    if x is None:
        return None
    return {e: -1 if x.bit(i + 1) else 1 for i, e in enumerate(edges)}


def quotient_adinkra(n: int, c: BinaryCode) -> Adinkra:
    """Adinkra on the quotient graph; raises InfeasibleSignature when none exists."""
    g = quotient_graph(n, c)
    sig = solve_totally_odd(g)
    if sig is None:
        raise InfeasibleSignature(
            "no totally odd signature: a quotient admits one exactly when "
            "the code is doubly even")
    return Adinkra(g, sig, code=c)


def min_vertices(n: int) -> int:
    """Minimum vertex count of any Adinkra with n colors."""
    if n < 1:
        raise AdinkraError("need n >= 1")
    m, p = divmod(n, 8)
    exponent = {0: 0, 1: 1, 2: 2, 3: 3, 4: 3, 5: 4, 6: 4, 7: 4}[p]
    return 1 << (4 * m + exponent)


# ---------------------------------------------------------------------------
# Vertex switching and signature classes
# ---------------------------------------------------------------------------

def vertex_switch(a: Adinkra, w) -> Adinkra:
    """Negate exactly the edges with one endpoint in the vertex set w."""
    ws = frozenset(w)
    if any(not 0 <= v < a.n_vertices for v in ws):
        raise AdinkraError("switch set contains an unknown vertex")
    sig = {}
    for (u, v, c), s in a.signature.items():
        flip = (u in ws) + (v in ws) == 1
        sig[(u, v, c)] = -s if flip else s
    return Adinkra(a.graph, sig, code=a.code)


def _dash_mask(a: Adinkra, edges: list[Edge]) -> int:
    m = len(edges)
    x = 0
    for i, e in enumerate(edges):
        if a.signature[e] == -1:
            x |= 1 << (m - 1 - i)
    return x


def signature_classes(a: Adinkra) -> list[Adinkra]:
    """One representative per switching class of totally odd signatures.

    The solutions of the bicolor-parity system form an affine space; vertex
    switches span a subspace of its direction.  Classes are the quotient,
    and for a quotient Adinkra their number must be 2^dim(code).
    """
    edges, rows = _cycle_equations(a.graph)
    m = len(edges)
    system = Gf2Matrix(len(rows), m, rows)
    kernel = gf2_kernel(system)

    switch_rows = []
    for v in range(a.n_vertices):
        mask = 0
        for i, (x, y, _c) in enumerate(edges):
            if v == x or v == y:
                mask |= 1 << (m - 1 - i)
        switch_rows.append(mask)
    switch_mat, switch_pivots = Gf2Matrix(len(switch_rows), m, switch_rows).rref()

    # Reduce kernel vectors against the switching span; independent residues
    # enumerate the classes.
    reduced_rows = [switch_mat.packed[r] for r in range(len(switch_pivots))]
    pivot_bits = [1 << (m - 1 - j) for j in switch_pivots]
    quotient_basis: list[int] = []
    q_pivot_bits: list[int] = []
    for vec in kernel:
        x = vec.value
        for row, bit in zip(reduced_rows, pivot_bits):
            if x & bit:
                x ^= row
        if x:
            reduced_rows.append(x)
            pivot_bits.append(1 << (x.bit_length() - 1))
            quotient_basis.append(x)
            q_pivot_bits.append(1 << (x.bit_length() - 1))
    k = len(quotient_basis)
    check_guard(k <= MAX_CLASS_DIMENSION, f"2^{k} signature classes requested")
    if a.code is not None and k != a.code.dimension:
        raise AdinkraError(
            f"class count 2^{k} contradicts the code dimension {a.code.dimension}")

    base = _dash_mask(a, edges)
    out = []
    for combo in range(1 << k):
        x = base
        for i in range(k):
            if (combo >> i) & 1:
                x ^= quotient_basis[i]
        sig = {e: -1 if (x >> (m - 1 - i)) & 1 else 1 for i, e in enumerate(edges)}
        out.append(Adinkra(a.graph, sig, code=a.code))
    return out


def walk2_balance(a: Adinkra, u: int, v: int) -> int:
    """Signed count of length-2 walks between u and v (an entry of A^2)."""
    adj = a.adjacency()
    sign_to = {w: s for (w, s) in adj[v]}
    total = 0
    for (w, s) in adj[u]:
        if w in sign_to:
            total += s * sign_to[w]
    if u == v:
        total = sum(s * s for (_w, s) in adj[u])
    return total


# ---------------------------------------------------------------------------
# Cayley graphs and color isomorphism
# ---------------------------------------------------------------------------

def cayley_graph(m: Gf2Matrix) -> ColoredGraph:
    """Cayley graph of GF(2)^r with the columns of m as color-labeled generators."""
    r, n = m.rows, m.cols
    if m.rank() != r:
        raise AdinkraError("generator matrix must have full row rank")
    cols = []
    for j in range(n):
        g = 0
        for i in range(r):
            g = (g << 1) | m.entry(i, j)
        cols.append(g)
    if any(g == 0 for g in cols):
        raise AdinkraError("zero generator column would create loops")
    if len(set(cols)) != n:
        raise AdinkraError("repeated generator columns would create parallel edges")
    labels = _boson_first(list(range(1 << r)))
    index = {lab: i for i, lab in enumerate(labels)}
    edges = set()
    for i, h in enumerate(labels):
        for j, g in enumerate(cols, start=1):
            k = index[h ^ g]
            edges.add((min(i, k), max(i, k), j))
    return ColoredGraph(n, r, labels, sorted(edges))


def is_generic(m: Gf2Matrix) -> bool:
    """True when the mod-2 sum of the columns of m is non-zero."""
    return any(row.bit_count() & 1 for row in m.packed)


def color_isomorphism(g1: ColoredGraph, g2: ColoredGraph) -> dict[int, int] | None:
    """A color-preserving vertex bijection, or None.

    Color-regularity forces the whole map once one image is fixed, so the
    search anchors vertex 0 of g1 on every vertex of g2 and propagates.
    Requires connected inputs.
    """
    if g1.n_colors != g2.n_colors or g1.n_vertices != g2.n_vertices:
        return None
    if g1.n_vertices == 0:
        return {}
    try:
        maps1 = g1.color_maps()
        maps2 = g2.color_maps()
    except AdinkraError:
        return None
    if not (g1.is_connected() and g2.is_connected()):
        raise AdinkraError("color_isomorphism requires connected graphs")

    n = g1.n_vertices
    for anchor in range(n):
        mapping = {0: anchor}
        stack = [0]
        ok = True
        while stack and ok:
            u = stack.pop()
            w = mapping[u]
            for c in range(1, g1.n_colors + 1):
                if u not in maps1[c] or w not in maps2[c]:
                    ok = False
                    break
                u2, w2 = maps1[c][u], maps2[c][w]
                if u2 in mapping:
                    if mapping[u2] != w2:
                        ok = False
                        break
                else:
                    mapping[u2] = w2
                    stack.append(u2)
        if ok and len(mapping) == n and len(set(mapping.values())) == n:
            return mapping
    return None


# ---------------------------------------------------------------------------
# JSON document format
# ---------------------------------------------------------------------------

def to_json(a: Adinkra) -> str:
    doc = {
        "n_colors": a.n_colors,
        "vertices": a.graph.labels(),
        "edges": [{"u": u, "v": v, "color": c, "sign": a.signature[(u, v, c)]}
                  for (u, v, c) in a.graph.edges],
    }
    return json.dumps(doc, indent=1)


def from_json(text: str) -> Adinkra:
    """Load and re-validate an Adinkra document."""
    doc = json.loads(text)
    labels = [BitVector.from_string(s) for s in doc["vertices"]]
    if not labels:
        raise AdinkraError("empty vertex list")
    n_bits = labels[0].length
    edges = {}
    for e in doc["edges"]:
        u, v, c, s = e["u"], e["v"], e["color"], e["sign"]
        if u > v:
            u, v = v, u
        edges[(u, v, c)] = s
    g = ColoredGraph(doc["n_colors"], n_bits, [l.value for l in labels], list(edges))
    a = Adinkra(g, edges)
    report = validate(a)
    if not report.ok:
        raise AdinkraError(f"document fails validation: {report.violations[0]}")
    return a
