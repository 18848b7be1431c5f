"""Theorem verification and experiments: invariant-factor profiles end to
end, structural checks on every catalog instance, the golden table of
(N <= 8, k <= 4) quotients, and the signature-independence experiments.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .adinkra import (Adinkra, ColoredGraph, cayley_graph, color_isomorphism,
                      hypercube_adinkra, is_generic, quotient_adinkra,
                      quotient_graph, signature_classes, vertex_switch)
from .codes import (BinaryCode, BitVector, Gf2Matrix, contains_all_ones,
                    parse_code_name)
from .config import DEFAULT_SEED
from .exactmat import (IntMatrix, adjacency_matrix, block_X, colored_block_X,
                       colored_laplacian, det_int, det_poly, laplacian_matrix,
                       matrix_identity_check, peval, pmul, psub, reduce_mod_p,
                       specialize_first_color)
from .snf import (FactorProfile, SnfResult, p_corank, snf_int, snf_poly,
                  x_minus_one_multiplicity)


class AnalysisError(ValueError):
    pass


class TableMismatch(AnalysisError):
    def __init__(self, diffs: list[str]):
        super().__init__("computed table differs from the golden table:\n  "
                         + "\n  ".join(diffs))
        self.diffs = diffs


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

@dataclass
class TheoremReport:
    theorem: str
    instances: list[dict] = field(default_factory=list)
    counterexample: dict | None = None

    def record(self, instance: str, ok: bool, detail: str = "",
               bundle: dict | None = None) -> None:
        self.instances.append({"instance": instance, "pass": bool(ok),
                               "detail": detail})
        if not ok and self.counterexample is None:
            self.counterexample = bundle or {"instance": instance,
                                             "detail": detail}

    @property
    def passed(self) -> bool:
        return all(e["pass"] for e in self.instances)

    def to_dict(self) -> dict:
        return {"theorem": self.theorem, "instances": self.instances,
                "pass": self.passed,
                **({"counterexample": self.counterexample}
                   if self.counterexample else {})}

    def summary(self) -> str:
        n_ok = sum(1 for e in self.instances if e["pass"])
        status = "pass" if self.passed else "FAIL"
        return f"{self.theorem}: {status} ({n_ok}/{len(self.instances)} instances)"


def _bundle(a: Adinkra, switch_set=None, seed=None) -> dict:
    """Replayable payload for a failing instance."""
    out: dict = {
        "n_colors": a.n_colors,
        "vertices": a.graph.labels(),
        "dashed_edges": sorted(e for e, s in a.signature.items() if s == -1),
    }
    if a.code is not None:
        out["code_generators"] = [str(g) for g in a.code.generators]
        out["code_length"] = a.code.length
    if switch_set is not None:
        out["switch_set"] = sorted(switch_set)
    if seed is not None:
        out["seed"] = seed
    return out


# ---------------------------------------------------------------------------
# The catalog and the golden table
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CatalogRow:
    n: int
    k: int
    name: str
    profile: tuple  # golden invariant factors of L, ((value, mult), ...)


GOLDEN_TABLE: tuple[CatalogRow, ...] = (
    CatalogRow(1, 0, "t", ((1, 1), (0, 1))),
    CatalogRow(2, 0, "t2", ((1, 2), (2, 2))),
    CatalogRow(3, 0, "t3", ((1, 4), (6, 4))),
    CatalogRow(4, 0, "t4", ((1, 8), (12, 8))),
    CatalogRow(4, 1, "d4", ((1, 2), (2, 2), (6, 2), (12, 2))),
    CatalogRow(5, 0, "t5", ((1, 16), (20, 16))),
    CatalogRow(5, 1, "d4+t", ((1, 8), (20, 8))),
    CatalogRow(6, 0, "t6", ((1, 32), (30, 32))),
    CatalogRow(6, 1, "d4+t2", ((1, 16), (30, 16))),
    CatalogRow(6, 2, "d6", ((1, 8), (30, 8))),
    CatalogRow(7, 0, "t7", ((1, 64), (42, 64))),
    CatalogRow(7, 1, "d4+t3", ((1, 32), (42, 32))),
    CatalogRow(7, 2, "d6+t", ((1, 16), (42, 16))),
    CatalogRow(7, 3, "e7", ((1, 8), (42, 8))),
    CatalogRow(8, 0, "t8", ((1, 128), (56, 128))),
    CatalogRow(8, 1, "d4+t4", ((1, 64), (56, 64))),
    CatalogRow(8, 1, "h8", ((1, 56), (2, 8), (28, 8), (56, 56))),
    CatalogRow(8, 2, "d6+t2", ((1, 32), (56, 32))),
    CatalogRow(8, 2, "d4+d4", ((1, 24), (2, 8), (28, 8), (56, 24))),
    CatalogRow(8, 3, "e7+t", ((1, 16), (56, 16))),
    CatalogRow(8, 3, "d8", ((1, 8), (2, 8), (28, 8), (56, 8))),
    CatalogRow(8, 4, "e8", ((1, 2), (2, 6), (28, 6), (56, 2))),
)


def catalog_code(name: str) -> BinaryCode:
    return parse_code_name(name)


def build_adinkra(name: str) -> Adinkra:
    """Catalog constructor: cubes via the prism recursion, quotients solved."""
    code = catalog_code(name)
    if code.dimension == 0:
        return hypercube_adinkra(code.length)
    return quotient_adinkra(code.length, code)


def catalog_rows(max_n: int = 8, max_k: int = 4) -> list[CatalogRow]:
    return [r for r in GOLDEN_TABLE if r.n <= max_n and r.k <= max_k]


def catalog_odd_prime_pairs(max_n: int = 8) -> list[tuple[CatalogRow, int]]:
    pairs = []
    for row in catalog_rows(max_n):
        for p in (3, 5, 7):
            if row.n % p == 0:
                pairs.append((row, p))
    return pairs


# ---------------------------------------------------------------------------
# Table reproduction
# ---------------------------------------------------------------------------

@dataclass
class TableEntry:
    n: int
    k: int
    name: str
    signature_class: int
    profile: FactorProfile
    x_profile: FactorProfile
    seconds: float

    def format(self) -> str:
        cls = f" [class {self.signature_class}]" if self.signature_class else ""
        return (f"N={self.n} k={self.k} {self.name:8s}{cls:10s} "
                f"L: {self.profile.format()}  X: {self.x_profile.format()}")


def _table_row_entries(row: CatalogRow) -> list[TableEntry]:
    t0 = time.monotonic()
    a = build_adinkra(row.name)
    code = a.code
    # When the all-ones word is a codeword there are two switching orbits;
    # the run covers every switching class so both orbits are exercised.
    reps = [a]
    if code is not None and code.dimension and contains_all_ones(code):
        reps = signature_classes(a)
    out = []
    for cls_id, rep in enumerate(reps):
        lp = snf_int(laplacian_matrix(rep)).profile
        xp = snf_int(block_X(rep)).profile
        out.append(TableEntry(row.n, row.k, row.name, cls_id, lp, xp,
                              time.monotonic() - t0))
        t0 = time.monotonic()
    return out


def reproduce_table(max_n: int = 8, max_k: int = 4, check: bool = True,
                    jobs: int = 1) -> list[TableEntry]:
    """Recompute every golden-table row; optionally compare profiles exactly."""
    rows = catalog_rows(max_n, max_k)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            per_row = list(pool.map(_table_row_entries, rows))
    else:
        per_row = [_table_row_entries(r) for r in rows]
    entries = [e for chunk in per_row for e in chunk]
    entries.sort(key=lambda e: (e.n, e.k, e.name, e.signature_class))
    if check:
        diffs = []
        for row in rows:
            want = FactorProfile(row.profile)
            for e in entries:
                if (e.n, e.k, e.name) == (row.n, row.k, row.name) and e.profile != want:
                    diffs.append(f"{row.name} class {e.signature_class}: "
                                 f"computed {e.profile.format()}, "
                                 f"golden {want.format()}")
        if diffs:
            raise TableMismatch(diffs)
    return entries


# ---------------------------------------------------------------------------
# Profile arithmetic (invariant-factor theorems)
# ---------------------------------------------------------------------------

def derive_L_profile_from_X(xp: FactorProfile, n: int) -> FactorProfile:
    """Laplacian profile from the X profile: keep the first half, multiply the
    upper half into N(N-1)/x, and double every multiplicity."""
    xs = xp.expand()
    if n == 1:
        if xs != [1]:
            raise AnalysisError("degenerate N=1 expects X profile (1)")
        return FactorProfile(((1, 1), (0, 1)))
    m = len(xs)
    if m % 2:
        raise AnalysisError("X profile must have even total multiplicity")
    for i in range(m):
        if xs[i] * xs[m - 1 - i] != n:
            raise AnalysisError(
                f"X profile breaks the symmetry x_i * x_(m+1-i) = N at {i}")
    half = xs[:m // 2]
    diag = []
    for x in half:
        diag += [x, x]
    for x in reversed(half):
        diag += [n * (n - 1) // x, n * (n - 1) // x]
    return FactorProfile.from_diag(diag)


def _is_power_of_two(v: int) -> bool:
    return v >= 1 and v & (v - 1) == 0


def check_profile_structure(profile: FactorProfile, n: int) -> TheoremReport:
    """Structural facts about an N-color Laplacian profile, N >= 2."""
    rep = TheoremReport("profile_structure")
    ds = profile.expand()
    nv = len(ds)
    half = nv // 2
    nn1 = n * (n - 1)

    rep.record("first_two_are_one", ds[0] == 1 and ds[1] == 1, f"{ds[:2]}")
    rep.record("last_two_are_N(N-1)", ds[-1] == nn1 and ds[-2] == nn1, f"{ds[-2:]}")
    ok = all(_is_power_of_two(v) and n % v == 0 for v in ds[:half])
    rep.record("first_half_powers_of_two_dividing_N", ok, f"{sorted(set(ds[:half]))}")
    ok = all(v and nn1 % v == 0 and _is_power_of_two(nn1 // v) and n % (nn1 // v) == 0
             for v in ds[half:])
    rep.record("second_half_N(N-1)_over_powers_of_two", ok, f"{sorted(set(ds[half:]))}")
    rep.record("pair_products_equal_N(N-1)",
               all(ds[i] * ds[nv - 1 - i] == nn1 for i in range(nv)), "")
    rep.record("last_half_even", all(v % 2 == 0 for v in ds[half:]), "")
    if n % 4:
        forced = [1] * half + [nn1] * half
        rep.record("not_multiple_of_4_forces_trivial", ds == forced, "")
    m = 1
    while n % (4 ** m) == 0:
        m += 1
    rep.record(f"first_half_at_most_2^{m - 1}",
               all(v <= 2 ** (m - 1) for v in ds[:half]), f"4^{m} does not divide N")
    return rep


# ---------------------------------------------------------------------------
# Eigenvalue / determinant suite
# ---------------------------------------------------------------------------

def check_eigen_suite(a: Adinkra, polynomial_det: bool = True,
                      seed: int = DEFAULT_SEED) -> TheoremReport:
    rep = TheoremReport("eigen_identities")
    n = a.n_colors
    nv = a.n_vertices
    label = f"N={n} V={nv}" + (f" code={a.code!r}" if a.code else "")

    idr = matrix_identity_check(a, seed=seed)
    for (name, ok, detail) in idr.checks:
        rep.record(f"{label}: {name}", ok, detail or "", _bundle(a) if not ok else None)

    adj = adjacency_matrix(a)
    lap = laplacian_matrix(a)
    rep.record(f"{label}: trace_A_zero", adj.trace() == 0, str(adj.trace()))
    rep.record(f"{label}: trace_L", lap.trace() == n * nv, str(lap.trace()))

    det_a = det_int(adj)
    want_a = n ** (nv // 2) if n > 1 else (-1) ** (nv // 2)
    rep.record(f"{label}: det_A", det_a == want_a, f"{det_a}")

    det_l = det_int(lap)
    rep.record(f"{label}: det_L", det_l == (n * (n - 1)) ** (nv // 2), f"{det_l}")

    det_x = det_int(block_X(a))
    rep.record(f"{label}: det_X_squared", det_x ** 2 == n ** (nv // 2), f"{det_x}")

    if polynomial_det:
        lhat = specialize_first_color(colored_laplacian(a))
        got = det_poly(lhat)
        want = (1,)
        for _ in range(nv // 2):
            want = pmul(want, ((n - 1) * (n - 2), 2 * (n - 1)))
        rep.record(f"{label}: det_L_hat", got == want,
                   f"degree {len(got) - 1}")
    return rep


# ---------------------------------------------------------------------------
# Odd Prime Theorem: three routes
# ---------------------------------------------------------------------------

def check_odd_prime(a: Adinkra, p: int) -> TheoremReport:
    """Integer SNF divisibility counts, p-coranks, and (x-1) data over F_p[x]
    must agree, with the colored lift pinning the exact multiplicities."""
    rep = TheoremReport(f"odd_prime_p{p}")
    n = a.n_colors
    nv = a.n_vertices
    if p % 2 == 0 or n % p:
        raise AnalysisError("need an odd prime dividing the color count")
    label = f"N={n} V={nv} p={p}"

    x = block_X(a)
    lap = laplacian_matrix(a)
    rx = snf_int(x)
    rl = snf_int(lap)

    x_div = [1 if d % p == 0 else 0 for d in rx.diag]
    l_div = [1 if d % p == 0 else 0 for d in rl.diag]
    rep.record(f"{label}: first_quarter_X_coprime", sum(x_div[:nv // 4]) == 0,
               f"{sum(x_div)} of {len(x_div)} X factors divisible")
    rep.record(f"{label}: first_half_L_coprime", sum(l_div[:nv // 2]) == 0,
               f"{sum(l_div)} of {len(l_div)} L factors divisible")

    cx = p_corank(x, p)
    cl = p_corank(lap, p)
    rep.record(f"{label}: X_p_corank_matches_snf", cx == sum(x_div), f"corank {cx}")
    rep.record(f"{label}: L_p_corank_matches_snf", cl == sum(l_div), f"corank {cl}")

    xt = reduce_mod_p(specialize_first_color(colored_block_X(a)), p)
    lt = reduce_mod_p(specialize_first_color(colored_laplacian(a)), p)
    rxt = snf_poly(xt)
    rlt = snf_poly(lt)

    def divisible_by_x_minus_1(res: SnfResult) -> int:
        return sum(1 for d in res.diag if d and peval(d, 1) % p == 0)

    rep.record(f"{label}: X_tilde_factor_count", divisible_by_x_minus_1(rxt) == cx,
               f"{divisible_by_x_minus_1(rxt)}")
    rep.record(f"{label}: L_tilde_factor_count", divisible_by_x_minus_1(rlt) == cl,
               f"{divisible_by_x_minus_1(rlt)}")
    mx = x_minus_one_multiplicity(rxt)
    ml = x_minus_one_multiplicity(rlt)
    rep.record(f"{label}: X_tilde_x_minus_1_multiplicity", mx == nv // 4, f"{mx}")
    rep.record(f"{label}: L_tilde_x_minus_1_multiplicity", ml == nv // 2, f"{ml}")
    return rep


def check_linv_fineq(a: Adinkra) -> TheoremReport:
    """Every prime dividing N(N-1) divides at least #V/2 of the L factors."""
    rep = TheoremReport("L_divisibility_lower_bound")
    n = a.n_colors
    nv = a.n_vertices
    diag = snf_int(laplacian_matrix(a)).diag
    target = n * (n - 1)
    p = 2
    while target > 1:
        if target % p == 0:
            while target % p == 0:
                target //= p
            cnt = sum(1 for d in diag if d % p == 0)
            rep.record(f"N={n} V={nv} p={p}", cnt >= nv // 2, f"count {cnt}")
        p += 1 if p == 2 else 2
    return rep


# ---------------------------------------------------------------------------
# Switching invariance
# ---------------------------------------------------------------------------

def check_switching_invariance(a: Adinkra, trials: int = 100,
                               seed: int = DEFAULT_SEED) -> TheoremReport:
    rep = TheoremReport("switching_invariance")
    if trials < 1:
        raise AnalysisError("need at least one trial")
    label = f"N={a.n_colors} V={a.n_vertices}"
    lap = laplacian_matrix(a)
    base = snf_int(lap).profile

    # Matrix form: switching one vertex negates its row and column (the
    # diagonal entry is negated twice, hence unchanged).
    probe = 0
    switched = vertex_switch(a, {probe})
    want = [row[:] for row in lap.data]
    want[probe] = [-x for x in want[probe]]
    for row in want:
        row[probe] = -row[probe]
    rep.record(f"{label}: row_column_negation",
               laplacian_matrix(switched).data == want, "")

    # A single boson switch negates one row of X and flips det X.
    det_x = det_int(block_X(a))
    det_x_switched = det_int(block_X(switched))
    rep.record(f"{label}: boson_switch_flips_det_X",
               det_x_switched == -det_x, f"{det_x} -> {det_x_switched}")

    rng = random.Random(seed)
    for trial in range(trials):
        w = [v for v in range(a.n_vertices) if rng.getrandbits(1)]
        got = snf_int(laplacian_matrix(vertex_switch(a, w))).profile
        if got != base:
            rep.record(f"{label}: trial_{trial}", False,
                       f"profile changed to {got.format()}",
                       _bundle(a, switch_set=w, seed=seed))
            return rep
    rep.record(f"{label}: {trials}_random_switch_sets", True, base.format())
    return rep


# ---------------------------------------------------------------------------
# Signature independence experiment
# ---------------------------------------------------------------------------

def signature_independence_experiment(c: BinaryCode,
                                      seed: int = DEFAULT_SEED) -> TheoremReport:
    rep = TheoremReport("signature_independence")
    a = quotient_adinkra(c.length, c)
    n = c.length
    nv = a.n_vertices
    label = f"N={n} k={c.dimension}"
    classes = signature_classes(a)
    rep.record(f"{label}: class_count", len(classes) == 2 ** c.dimension,
               f"{len(classes)} classes")
    profiles = [snf_int(laplacian_matrix(rep_a)).profile for rep_a in classes]
    all_equal = all(p == profiles[0] for p in profiles)
    rep.record(f"{label}: profiles_agree_across_classes", all_equal,
               "; ".join(sorted({p.format() for p in profiles})),
               None if all_equal else _bundle(classes[0], seed=seed))
    if not contains_all_ones(c):
        forced = FactorProfile(((1, nv // 2), (n * n - n, nv // 2))) if n > 1 \
            else FactorProfile(((1, 1), (0, 1)))
        rep.record(f"{label}: forced_profile_without_all_ones",
                   profiles[0] == forced, profiles[0].format())
    return rep


# ---------------------------------------------------------------------------
# Cayley correspondence
# ---------------------------------------------------------------------------

def standard_form(c: BinaryCode) -> tuple[Gf2Matrix, BinaryCode, list[int]]:
    """M = [I | A] with ker(M) equal to the column-permuted code.

    Columns are permuted (free columns first, pivot columns last) so the
    reduced generator matrix reads [A^T | I]; the permutation is returned as
    the list of original column indices in their new order.
    """
    g, pivots = c.generator_matrix().rref()
    free = [j for j in range(c.length) if j not in pivots]
    order = free + list(pivots)
    k = c.dimension
    r = c.length - k
    # Permuted generators: rows of [A^T | I].
    perm_gens = []
    for i in range(k):
        bits = [g.entry(i, j) for j in order]
        perm_gens.append(BitVector.from_bits(bits))
    permuted_code = BinaryCode(c.length, perm_gens) if k else BinaryCode(c.length, [])
    at_block = [[g.entry(i, j) for j in free] for i in range(k)]
    m_rows = []
    for i in range(r):
        bits = [1 if j == i else 0 for j in range(r)] + [at_block[l][i] for l in range(k)]
        m_rows.append(BitVector.from_bits(bits))
    m = Gf2Matrix(r, c.length, [b.value for b in m_rows])
    return m, permuted_code, order


def _unsigned_laplacian(g: ColoredGraph) -> IntMatrix:
    n = g.n_vertices
    data = [[0] * n for _ in range(n)]
    for (u, v, _c) in g.edges:
        data[u][v] -= 1
        data[v][u] -= 1
        data[u][u] += 1
        data[v][v] += 1
    return IntMatrix(data)


def check_cayley_correspondence(c: BinaryCode) -> TheoremReport:
    rep = TheoremReport("cayley_correspondence")
    n = c.length
    k = c.dimension
    label = f"N={n} k={k}"

    m, permuted, _order = standard_form(c)
    from .codes import gf2_kernel
    kernel_code = BinaryCode(n, gf2_kernel(m)) if m.rows < n else BinaryCode(n, [])
    rep.record(f"{label}: kernel_equals_standard_form_code",
               kernel_code == permuted, "")

    cg = cayley_graph(m)
    qg = quotient_graph(n, permuted)
    iso = color_isomorphism(cg, qg)
    rep.record(f"{label}: color_isomorphism_found", iso is not None, "")

    generic = is_generic(m)
    rep.record(f"{label}: generic_iff_no_all_ones",
               generic == (not contains_all_ones(c)), f"generic={generic}")

    # Unsigned critical group: even invariant factors (including the zero)
    # count the Sylow-2 cyclic factors plus one.
    lu = _unsigned_laplacian(qg)
    diag = snf_int(lu).diag
    even = sum(1 for d in diag if d % 2 == 0)
    nv = qg.n_vertices
    if generic:
        rep.record(f"{label}: generic_even_factor_count", even == nv // 2,
                   f"{even} even factors, Sylow-2 count {even - 1}")
    else:
        rep.record(f"{label}: even_factor_count_observed", True,
                   f"{even} even factors (all-ones in code, no forced count)")
    rep.record(f"{label}: doubly_even_lower_bound", even - 1 >= nv // 2 - 1,
               f"{even - 1} >= {nv // 2 - 1}")
    return rep


def cube_two_corank(max_n: int = 10) -> TheoremReport:
    """2-corank of the N-cube Laplacian is 2^(N-1): the even-factor count of
    the cube's critical group is one less."""
    rep = TheoremReport("cube_two_corank")
    for n in range(1, max_n + 1):
        a = hypercube_adinkra(n)
        corank = p_corank(laplacian_matrix(a), 2)
        rep.record(f"N={n}", corank == 2 ** (n - 1),
                   f"corank {corank}, cyclic-factor count {corank - 1}")
    return rep


# ---------------------------------------------------------------------------
# Prism profile theorem
# ---------------------------------------------------------------------------

def check_prism_profiles(max_n: int = 10) -> TheoremReport:
    rep = TheoremReport("prism_profiles")
    a = hypercube_adinkra(1)
    for n in range(2, max_n + 1):
        from .adinkra import prism
        a = prism(a)
        nv = a.n_vertices
        xp = snf_int(block_X(a)).profile
        want = FactorProfile(((1, nv // 4), (n, nv // 4)))
        rep.record(f"N={n}_X", xp == want, xp.format())
    return rep


# ---------------------------------------------------------------------------
# Paper-figure fixture: the d_4 quotient with the drawn signature
# ---------------------------------------------------------------------------

# Vertex labels use the representative with last coordinate zero, ordered as
# drawn: bosons then fermions, left to right.
_REFERENCE_D4_VERTICES = ["0000", "1100", "1010", "0110",
                          "1000", "0100", "0010", "1110"]
_REFERENCE_D4_EDGES = [
    (0, 4, 1, +1), (1, 5, 1, +1), (2, 6, 1, +1), (3, 7, 1, +1),
    (0, 5, 2, +1), (1, 4, 2, -1), (2, 7, 2, -1), (3, 6, 2, +1),
    (0, 6, 3, +1), (1, 7, 3, +1), (2, 4, 3, -1), (3, 5, 3, -1),
    (0, 7, 4, -1), (1, 6, 4, +1), (2, 5, 4, -1), (3, 4, 4, +1),
]

REFERENCE_D4_LAPLACIAN = [
    [4, 0, 0, 0, -1, -1, -1, 1],
    [0, 4, 0, 0, 1, -1, -1, -1],
    [0, 0, 4, 0, 1, 1, -1, 1],
    [0, 0, 0, 4, -1, 1, -1, -1],
    [-1, 1, 1, -1, 4, 0, 0, 0],
    [-1, -1, -1, -1, 0, 4, 0, 0],
    [-1, -1, -1, -1, 0, 0, 4, 0],
    [1, -1, 1, -1, 0, 0, 0, 4],
]


def reference_d4_adinkra() -> Adinkra:
    labels = [BitVector.from_string(s).value for s in _REFERENCE_D4_VERTICES]
    edges = [(u, v, c) for (u, v, c, _s) in _REFERENCE_D4_EDGES]
    g = ColoredGraph(4, 4, labels, edges)
    sig = {(u, v, c): s for (u, v, c, s) in _REFERENCE_D4_EDGES}
    return Adinkra(g, sig, code=parse_code_name("d4"))


def check_reference_fixture() -> TheoremReport:
    rep = TheoremReport("reference_d4_fixture")
    from .adinkra import validate
    a = reference_d4_adinkra()
    rep.record("fixture_validates", validate(a).ok, "")
    rep.record("A_squared", matrix_identity_check(a).ok, "")
    lap = laplacian_matrix(a)
    rep.record("laplacian_matches_reference", lap.data == REFERENCE_D4_LAPLACIAN, "")
    prof = snf_int(lap).profile
    want = FactorProfile(((1, 2), (2, 2), (6, 2), (12, 2)))
    rep.record("profile", prof == want, prof.format())
    return rep


# ---------------------------------------------------------------------------
# Exploratory: does the lift diagonalize over Z[x]?
# ---------------------------------------------------------------------------

def _zx_exact_div(a: tuple, b: tuple) -> tuple | None:
    """a / b in Z[x] when exact, else None."""
    if not b:
        return None
    if not a:
        return ()
    r = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    for k in range(len(a) - len(b), -1, -1):
        lead = r[k + len(b) - 1]
        if lead % b[-1]:
            return None
        f = lead // b[-1]
        q[k] = f
        for i, bi in enumerate(b):
            r[k + i] -= f * bi
    return tuple(q) if not any(r) else None


def universal_snf_probe(a: Adinkra, max_vertices: int = 64) -> bool | None:
    """Try a greedy exact elimination of the lifted Laplacian over Z[x].

    Exploratory output only: True if the greedy pass reaches a diagonal with
    a divisibility chain, False if it gets stuck, None if skipped for size.
    No claim is made either way.
    """
    if a.n_vertices > max_vertices:
        return None
    m = specialize_first_color(colored_laplacian(a))
    d = [[e for e in row] for row in m.data]
    n = len(d)
    for t in range(n):
        # Pick the entry most likely to divide the rest: minimal degree, then
        # minimal absolute leading coefficient.
        best = None
        key = None
        for i in range(t, n):
            for j in range(t, n):
                e = d[i][j]
                if e:
                    k2 = (len(e) - 1, abs(e[-1]), i, j)
                    if key is None or k2 < key:
                        key, best = k2, (i, j)
        if best is None:
            break
        i0, j0 = best
        d[t], d[i0] = d[i0], d[t]
        for row in d:
            row[t], row[j0] = row[j0], row[t]
        piv = d[t][t]
        progress = True
        while progress:
            progress = False
            for i in range(t + 1, n):
                if d[i][t]:
                    q = _zx_exact_div(d[i][t], piv)
                    if q is None:
                        return False
                    d[i] = [tuple(x - y for x, y in
                                  zip(list(av) + [0] * 8, list(pmul(q, pv)) + [0] * 8))
                            for av, pv in zip(d[i], d[t])]
                    d[i] = [_trim(e) for e in d[i]]
                    progress = True
            for j in range(t + 1, n):
                if d[t][j]:
                    q = _zx_exact_div(d[t][j], piv)
                    if q is None:
                        return False
                    for row in d:
                        qr = pmul(q, row[t])
                        row[j] = _trim(tuple(x - y for x, y in
                                             zip(list(row[j]) + [0] * 8,
                                                 list(qr) + [0] * 8)))
                    progress = True
    diag = [d[i][i] for i in range(n)]
    for i in range(n - 1):
        if diag[i + 1] and _zx_exact_div(diag[i + 1], diag[i]) is None:
            return False
    return True


def _trim(e):
    e = list(e)
    while e and e[-1] == 0:
        e.pop()
    return tuple(e)


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------

def _restrict(names: list[str], only: str | None) -> list[str]:
    if only is None:
        return names
    if only not in names:
        raise AnalysisError(f"code {only!r} is not in the catalog")
    return [only]


def run_suite(suite: str, code: str | None = None, trials: int = 100,
              seed: int = DEFAULT_SEED, max_n: int = 8) -> list[TheoremReport]:
    """Named verification suites over the catalog (or one --code)."""
    names = [r.name for r in catalog_rows(max_n)]
    reports: list[TheoremReport] = []

    if suite == "eigen":
        for name in _restrict(names, code):
            a = build_adinkra(name)
            reports.append(check_eigen_suite(a, seed=seed))
    elif suite == "invfactors":
        for name in _restrict(names, code):
            a = build_adinkra(name)
            lp = snf_int(laplacian_matrix(a)).profile
            xp = snf_int(block_X(a)).profile
            rep = TheoremReport("invariant_factors")
            n = a.n_colors
            derived = derive_L_profile_from_X(xp, n)
            rep.record(f"{name}: L_profile_from_X", derived == lp,
                       f"{derived.format()} vs {lp.format()}")
            reports.append(rep)
            if n >= 2:
                reports.append(check_profile_structure(lp, n))
            reports.append(check_linv_fineq(a))
        if code is None:
            reports.append(check_prism_profiles())
    elif suite == "oddprime":
        pairs = catalog_odd_prime_pairs(max_n)
        if code is not None:
            pairs = [(r, p) for (r, p) in pairs if r.name == code]
        for row, p in pairs:
            reports.append(check_odd_prime(build_adinkra(row.name), p))
    elif suite == "switching":
        targets = _restrict(names, code) if code else ["e8", "d8"]
        for name in targets:
            reports.append(check_switching_invariance(build_adinkra(name),
                                                      trials=trials, seed=seed))
    elif suite == "cayley":
        for name in _restrict(names, code):
            reports.append(check_cayley_correspondence(catalog_code(name)))
        if code is None:
            reports.append(cube_two_corank())
    elif suite == "conjecture":
        for name in _restrict(names, code):
            c = catalog_code(name)
            rep = signature_independence_experiment(c, seed=seed)
            a = build_adinkra(name)
            probe = universal_snf_probe(a)
            if probe is not None:
                rep.record(f"{name}: exploratory_Zx_diagonalization", True,
                           f"greedy elimination {'reached' if probe else 'did not reach'}"
                           " a diagonal form (informational)")
            reports.append(rep)
    elif suite == "fixture":
        reports.append(check_reference_fixture())
    else:
        raise AnalysisError(f"unknown suite {suite!r}")
    return reports
