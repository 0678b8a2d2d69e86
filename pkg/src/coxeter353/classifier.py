"""Epimorphisms from the tetrahedral group onto L_2(q) and their kernels.

The group Delta = [3,5,3]^+ has the presentation

    <alpha, beta, gamma | alpha^3 = beta^5 = gamma^3
                          = (alpha beta)^2 = (beta gamma)^2 = (alpha beta gamma)^2 = 1>.

An epimorphism is built in two steps.  The icosahedral subgroup <alpha, beta>
is sent to a fixed pair of matrices determined by a golden-ratio trace t, and
then gamma is sent to a matrix whose entries are fixed by a root x of a
quadratic over the field F = F_p(t).  Kernels are identified by comparing
epimorphisms up to automorphisms of L_2(q) (PGL_2 conjugation composed with
Frobenius), which is an explicit linear-algebra test.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .finite_fields import (
    QuadraticRoots,
    TowerElement,
    TowerField,
    build_field,
    frobenius,
    is_prime,
    is_square,
    solve_quadratic,
    sqrt,
    sum_of_two_squares,
)
from .projective_linear import (
    ProjectiveMatrix,
    is_in_psl,
    nullspace,
    projective_order,
)

TIMES, SIGMA, SIGMA_PLUS, NOT_NORMAL, BULLET = "×", "Σ", "Σ⁺", "−", "•"
ASCII_SYMBOLS = {TIMES: "x", SIGMA: "S", SIGMA_PLUS: "S+", NOT_NORMAL: "-", BULLET: "*"}

RESIDUES_MOD_11 = frozenset({1, 3, 4, 5, 9})


class RelationError(AssertionError):
    """Raised when constructed matrices fail a defining relation (a bug)."""


# -- base pair -------------------------------------------------------------------

def base_field_degree(p: int) -> int:
    """Degree of F = F_p(t): 1 when 5 is a square mod p (or p = 5), else 2."""
    if p == 2:
        return 2
    if p == 5 or p % 5 in (1, 4):
        return 1
    return 2


def golden_traces(p: int) -> list[tuple[int, TowerElement]]:
    """The inequivalent traces t (roots of t^2 + t - 1) with their indices.

    For odd p != 5, t_1 = (-1 + r)/2 and t_2 = (-1 - r)/2 where r is the
    canonical square root of 5.  For p = 5 there is a single class (t = 2),
    and for p = 2 the traces are the two elements of F_4 outside F_2.
    """
    F = build_field(p, base_field_degree(p))
    if p == 2:
        return [(1, F((0, 1))), (2, F((1, 1)))]
    if p == 5:
        return [(1, F(2))]
    root5 = sqrt(F(5))
    half = F(2).inverse()
    return [(1, (root5 - 1) * half), (2, (-root5 - 1) * half)]


@dataclass(frozen=True)
class BasePair:
    p: int
    trace_index: int
    field: TowerField
    t: TowerElement
    e: TowerElement | None
    f: TowerElement | None
    alpha: ProjectiveMatrix
    beta: ProjectiveMatrix


def construct_base_pair(p: int, trace_index: int) -> BasePair:
    """Images of alpha and beta for the given trace class."""
    traces = dict(golden_traces(p))
    if trace_index not in traces:
        raise ValueError(f"p={p} has no trace index {trace_index}")
    t = traces[trace_index]
    F = t.field
    if p == 2:
        alpha = ProjectiveMatrix((t, 0, t, t + 1), F)
        beta = ProjectiveMatrix((0, t + 1, t, t), F)
        return BasePair(p, trace_index, F, t, None, None, alpha, beta)
    e, f = sum_of_two_squares(t)
    h = F(2).inverse()
    alpha = ProjectiveMatrix(((1 - e) * h, (-t - f) * h, (t - f) * h, (1 + e) * h), F)
    beta = ProjectiveMatrix(((t + f) * h, (-1 - e) * h, (1 - e) * h, (t - f) * h), F)
    return BasePair(p, trace_index, F, t, e, f, alpha, beta)


def gamma_quadratic(bp: BasePair) -> tuple[TowerElement, TowerElement, TowerElement]:
    """Coefficients (a2, a1, a0) of the quadratic whose roots x give gamma."""
    t, e, f = bp.t, bp.e, bp.f
    if bp.p == 2:
        F = bp.field
        return F.one(), F.one(), t
    return e * e + f * f, -e * t, (3 * f * f + t * t) / 4


def gamma_discriminant(bp: BasePair) -> TowerElement:
    a2, a1, a0 = gamma_quadratic(bp)
    return a1 * a1 - 4 * a2 * a0


def gamma_matrix(bp: BasePair, x: TowerElement) -> ProjectiveMatrix:
    """The det-1, trace-1 matrix for gamma attached to the root x."""
    K = x.field
    t, e, f = K(bp.t), bp.e, bp.f
    if bp.p == 2:
        w = (t + 1) * x + 1
        z = (t + 1) * x
        return ProjectiveMatrix((w, x, x, z), K)
    e, f = K(e), K(f)
    w = (2 * e * x + f - t) / (2 * f)
    return ProjectiveMatrix((w, x, x, 1 - w), K)


# -- witnesses -------------------------------------------------------------------

@dataclass(frozen=True)
class EpimorphismWitness:
    p: int
    trace_index: int
    root_index: int
    base_degree: int
    degree: int
    t: TowerElement
    e: TowerElement | None
    f: TowerElement | None
    x: TowerElement
    alpha: ProjectiveMatrix
    beta: ProjectiveMatrix
    gamma: ProjectiveMatrix
    roots: QuadraticRoots = field(repr=False, compare=False)

    @property
    def q(self) -> int:
        return self.p ** self.degree

    @property
    def field(self) -> TowerField:
        return self.alpha.field

    @property
    def odd(self) -> bool:
        return self.p != 2

    def images(self) -> tuple[ProjectiveMatrix, ProjectiveMatrix, ProjectiveMatrix]:
        return self.alpha, self.beta, self.gamma

    def sqrt_4t5(self) -> TowerElement:
        """Canonical square root of 4t + 5 in F_q."""
        r = sqrt(self.field(4 * self.t + 5))
        if r is None:
            raise AssertionError("4t+5 must be a square in the quotient field")
        return r

    def root_branch(self) -> int:
        """+1 or -1 as x = (et +- f*sqrt(4t+5)) / (-2(t+2)); 0 if the root is repeated."""
        K = self.field
        t, e, f = K(self.t), K(self.e), K(self.f)
        r = self.sqrt_4t5()
        if not r:
            return 0
        plus = (e * t + f * r) / (-2 * (t + 2))
        minus = (e * t - f * r) / (-2 * (t + 2))
        if self.x == plus:
            return 1
        if self.x == minus:
            return -1
        raise AssertionError("root does not match either branch")


def relation_residues(a: ProjectiveMatrix, b: ProjectiveMatrix, c: ProjectiveMatrix) -> list[ProjectiveMatrix]:
    return [a ** 3, b ** 5, c ** 3, (a * b) ** 2, (b * c) ** 2, (a * b * c) ** 2]


def check_relations(a: ProjectiveMatrix, b: ProjectiveMatrix, c: ProjectiveMatrix) -> bool:
    return all(m.is_identity() for m in relation_residues(a, b, c))


def extend_to_witness(bp: BasePair, roots: QuadraticRoots, root_index: int) -> EpimorphismWitness:
    """Assemble gamma from a root and verify all six defining relations."""
    x = roots.roots[root_index]
    deg = max(bp.t.degree(), x.degree())
    Fq = build_field(bp.p, deg)
    x_q = x.restrict(deg)
    gamma = gamma_matrix(bp, x_q)
    alpha = bp.alpha.embed(Fq)
    beta = bp.beta.embed(Fq)
    if not check_relations(alpha, beta, gamma):
        raise RelationError(f"relations fail for p={bp.p}, t index {bp.trace_index}")
    if max(m.entry_degree() for m in (alpha, beta, gamma)) != deg:
        raise RelationError("entries generate an unexpected field")
    return EpimorphismWitness(
        p=bp.p,
        trace_index=bp.trace_index,
        root_index=root_index,
        base_degree=bp.field.n,
        degree=deg,
        t=Fq(bp.t),
        e=None if bp.e is None else Fq(bp.e),
        f=None if bp.f is None else Fq(bp.f),
        x=x_q,
        alpha=alpha,
        beta=beta,
        gamma=gamma,
        roots=roots,
    )


def witnesses_for_trace(p: int, trace_index: int) -> list[EpimorphismWitness]:
    bp = construct_base_pair(p, trace_index)
    roots = solve_quadratic(*gamma_quadratic(bp))
    return [extend_to_witness(bp, roots, i) for i in range(len(roots.roots))]


# -- kernel identification -------------------------------------------------------

def _equivariance_rows(src: ProjectiveMatrix, dst: ProjectiveMatrix, lam: TowerElement):
    """Rows of X*src - lam*dst*X = 0 in the unknowns (x1, x2, x3, x4)."""
    a, b, c, d = src.raw
    A, B, C, D = dst.raw
    zero = a.field.zero()
    # (X src)_{ij} - lam (dst X)_{ij}
    return [
        [a - lam * A, c, -lam * B, zero],
        [b, d - lam * A, zero, -lam * B],
        [-lam * C, zero, a - lam * D, c],
        [zero, -lam * C, b, d - lam * D],
    ]


def _scalar_for(src: ProjectiveMatrix, dst: ProjectiveMatrix) -> TowerElement | None:
    """lam with X src X^-1 = lam dst for det-1 lifts (lam = +-1 from traces)."""
    if src.field.p == 2:
        return src.field.one()
    ts, td = src.trace, dst.trace
    if ts == td:
        return src.field.one()
    if ts == -td:
        return -src.field.one()
    return None


def find_isomorphism(w1: EpimorphismWitness, w2: EpimorphismWitness) -> tuple[int, ProjectiveMatrix] | None:
    """(k, X) with X frob^k(w1) X^-1 = w2 on alpha, beta, gamma; None if none exists."""
    if w1.p != w2.p or w1.degree != w2.degree:
        return None
    K = w1.field
    for k in range(w1.degree):
        src = [m.map_entries(lambda v: frobenius(v, k)) for m in w1.images()]
        rows = []
        ok = True
        for s, d in zip(src[:2], w2.images()[:2]):
            lam = _scalar_for(s, d)
            if lam is None:
                ok = False
                break
            rows.extend(_equivariance_rows(s, d, lam))
        if not ok:
            continue
        for vec in nullspace(rows, K):
            try:
                X = ProjectiveMatrix(vec, K)
            except ValueError:
                continue
            if X * src[2] * X.inverse() == w2.gamma:
                return k, X
    return None


def same_kernel(w1: EpimorphismWitness, w2: EpimorphismWitness) -> bool:
    return find_isomorphism(w1, w2) is not None


def partition_kernels(witnesses: list[EpimorphismWitness]) -> list[list[EpimorphismWitness]]:
    classes: list[list[EpimorphismWitness]] = []
    for w in witnesses:
        for cls in classes:
            if same_kernel(cls[0], w):
                cls.append(w)
                break
        else:
            classes.append([w])
    return classes


# -- normality in Omega^+ --------------------------------------------------------

def s_value(w: EpimorphismWitness) -> TowerElement:
    """s = -2(-3 +- sqrt(4t+5)) with the sign of the root branch of x."""
    r = w.sqrt_4t5()
    branch = w.root_branch()
    return w.field(6) - 2 * branch * r


def s_polynomial(w: EpimorphismWitness) -> TowerElement:
    """The same s written as a polynomial in x, independent of branch bookkeeping."""
    t, e, f, x = w.t, w.e, w.f, w.x
    num = (8 + 4 * t) * x * x + (4 * e * t + 8 * f + 4 * f * t) * x - 1 + t + 2 * e * f * t + 3 * f * f
    return num / (f * f)


def omega_linear_system(w: EpimorphismWitness) -> ProjectiveMatrix:
    """Solve for g with g^2 = 1, beta^g = beta^-1 and alpha^g = gamma^-1.

    Unknowns are the entries of G; the equations are tr(G) = 0,
    tr(beta G) = 0 and A G = G C^-1 for the trace-1, det-1 lifts A, C.
    """
    K = w.field
    b1, b2, b3, b4 = w.beta.raw
    a1, a2, a3, a4 = w.alpha.raw
    c1, c2, c3, c4 = w.gamma.raw
    ci1, ci2, ci3, ci4 = c4, -c2, -c3, c1
    zero = K.zero()
    one = K.one()
    rows = [
        [one, zero, zero, one],
        [b1, b3, b2, b4],
        # (A G - G Cinv) entries, G = (g1 g2; g3 g4)
        [a1 - ci1, -ci3, a2, zero],
        [-ci2, a1 - ci4, zero, a2],
        [a3, zero, a4 - ci1, -ci3],
        [zero, a3, -ci2, a4 - ci4],
    ]
    basis = nullspace(rows, K)
    if len(basis) != 1:
        raise RelationError(f"expected a unique g, got a {len(basis)}-dimensional solution space")
    g = ProjectiveMatrix(basis[0], K)
    verify_omega_element(w, g)
    return g


def verify_omega_element(w: EpimorphismWitness, g: ProjectiveMatrix) -> None:
    if not (g * g).is_identity():
        raise RelationError("g^2 != 1")
    if w.beta.conjugate(g) != w.beta.inverse():
        raise RelationError("beta^g != beta^-1")
    if w.alpha.conjugate(g) != w.gamma.inverse():
        raise RelationError("alpha^g != gamma^-1")


def omega_closed_form(w: EpimorphismWitness) -> ProjectiveMatrix:
    """Closed-form g for odd p, splitting on whether f + t + 2x vanishes."""
    t, e, f, x = w.t, w.e, w.f, w.x
    K = w.field
    if f + t + 2 * x:
        g2 = K.one()
        g1 = (-t + e * f + 2 * e * x) / (f * (f + t + 2 * x))
        g3 = (f - t + 2 * x) / (t + f + 2 * x)
    else:
        g3 = K.one()
        g1 = (2 * e * x + e * f - t) / (f * (2 * x + f - t))
        if 1 - e:
            g2 = ((1 + e) * g3 - 2 * f * g1) / (1 - e)
        else:
            g2 = ((t + f) * f * g3 - (2 * e * x - f * e - t) * g1) / (2 * f * x)
    return ProjectiveMatrix((g1, g2, g3, -g1), K)


@dataclass(frozen=True)
class OmegaResult:
    symbol: str
    g: ProjectiveMatrix
    s: TowerElement | None


def omega_quotient(w: EpimorphismWitness) -> OmegaResult:
    """× if Omega^+/K = L_2(q) x C_2, • if it is PGL_2(q)."""
    g = omega_linear_system(w)
    by_g = TIMES if is_in_psl(g) else BULLET
    if not w.odd:
        return OmegaResult(by_g, g, None)
    s = s_value(w)
    if s != s_polynomial(w):
        raise RelationError("s formula disagrees with its polynomial form")
    by_s = TIMES if is_square(s) else BULLET
    if by_s != by_g:
        raise RelationError(f"s-criterion ({by_s}) disagrees with the linear system ({by_g})")
    if omega_closed_form(w) != g:
        raise RelationError("closed-form g disagrees with the linear system")
    return OmegaResult(by_s, g, s)


# -- normality in Gamma ----------------------------------------------------------

def other_gamma(w: EpimorphismWitness) -> ProjectiveMatrix:
    """The image delta of gamma under conjugation by the central involution."""
    roots = w.roots.roots
    other = roots[1 - w.root_index] if len(roots) == 2 else roots[0]
    bp = construct_base_pair(w.p, w.trace_index)
    return gamma_matrix(bp, other.restrict(w.degree))


def gamma_normality(w: EpimorphismWitness) -> str:
    """× (repeated root), Σ / Σ⁺ (Galois-conjugate roots) or − (roots in F)."""
    roots = w.roots
    if roots.repeated:
        return TIMES
    if roots.split_in_base:
        return NOT_NORMAL
    # The Galois group of F_q/F swaps the two roots and fixes alpha, beta.
    k = w.base_degree
    delta = other_gamma(w)
    if w.gamma.map_entries(lambda v: frobenius(v, k)) != delta:
        raise RelationError("Frobenius over F does not swap gamma and delta")
    return SIGMA if w.degree == 2 else SIGMA_PLUS


# -- kernels and table rows --------------------------------------------------------

@dataclass
class KernelDescriptor:
    p: int
    trace_index: int
    orbit_label: int
    degree: int
    omega_symbol: str
    gamma_symbol: str
    case_letter: str
    witnesses: list = field(repr=False, default_factory=list)
    omega_g: ProjectiveMatrix | None = field(repr=False, default=None)
    s_values: tuple = field(repr=False, default=())

    @property
    def q(self) -> int:
        return self.p ** self.degree

    @property
    def trace_indices(self) -> tuple[int, ...]:
        return tuple(sorted({w.trace_index for w in self.witnesses}))

    @property
    def representative(self) -> EpimorphismWitness:
        return self.witnesses[0]


def normalizer(k: KernelDescriptor) -> str:
    return "Ω" if k.gamma_symbol != NOT_NORMAL else "Ω⁺"


def quotient_name(p: int, n: int) -> str:
    sup = {1: "", 2: "²", 4: "⁴"}[n]
    return f"L₂({p}{sup})"


def gamma_quotient_name(k: KernelDescriptor) -> str:
    base = f"{k.p}{ {1: '', 2: '²', 4: '⁴'}[k.degree] }".replace(" ", "")
    if k.gamma_symbol == TIMES:
        return f"L₂({base})×C₂"
    if k.gamma_symbol == SIGMA:
        return f"PΣL₂({base})"
    if k.gamma_symbol == SIGMA_PLUS:
        return f"PΣL₂({base})⁺"
    raise ValueError("kernel is not normal in Gamma")


def omega_plus_quotient_name(k: KernelDescriptor) -> str:
    base = f"{k.p}{ {1: '', 2: '²', 4: '⁴'}[k.degree] }".replace(" ", "")
    return f"L₂({base})×C₂" if k.omega_symbol == TIMES else f"PGL₂({base})"


def full_isometry_group_name(k: KernelDescriptor) -> str:
    """Omega/K for a kernel normal in Gamma."""
    if k.gamma_symbol == NOT_NORMAL:
        raise ValueError("Omega/K is only defined here for kernels normal in Gamma")
    base = f"{k.p}{ {1: '', 2: '²', 4: '⁴'}[k.degree] }".replace(" ", "")
    if k.omega_symbol == TIMES:
        return gamma_quotient_name(k) + "×C₂"
    if k.gamma_symbol == TIMES:
        return f"PGL₂({base})×C₂"
    if k.gamma_symbol == SIGMA:
        return f"PΓL₂({base})"
    return f"PΓL₂({base})⁺"


def case_letter(p: int) -> str:
    """Case of the classification, decided by congruences and squareness of 4t+5."""
    if p == 2:
        return "a"
    if p == 5:
        return "b"
    if p == 11:
        return "c"
    if p % 5 in (1, 4):
        return "d" if p % 11 in RESIDUES_MOD_11 else "e"
    squares = [is_square(4 * t + 5) for _, t in golden_traces(p)]
    if all(squares):
        return "f"
    if not any(squares):
        return "g"
    raise AssertionError("4t+5 must have the same square class for both traces")


def expected_kernel_profile(p: int, letter: str, witnesses: list[EpimorphismWitness]) -> dict[int, int]:
    """Kernel counts per quotient degree prescribed by the classification."""
    if letter == "a":
        return {4: 1}
    if letter == "b":
        return {2: 1}
    if letter == "c":
        return {1: 1, 2: 1}
    if letter == "d":
        return {1: 4} if all(w.degree == 1 for w in witnesses) else {2: 2}
    if letter == "e":
        return {1: 2, 2: 1}
    if letter == "f":
        return {2: 2}
    return {4: 1}


@dataclass
class ClassificationRow:
    p: int
    sqrt5: TowerElement | None
    traces: list
    discriminants: list
    discriminant_roots: list
    counts: list
    merged: bool
    degrees: list
    gamma_symbols: list
    omega_symbols: list
    case_letter: str
    kernels: list = field(repr=False, default_factory=list)


def classify_prime(p: int) -> ClassificationRow:
    """Enumerate epimorphisms for p, fold them into kernels and label them."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    letter = case_letter(p)
    traces = golden_traces(p)
    witnesses = [w for i, _ in traces for w in witnesses_for_trace(p, i)]
    classes = partition_kernels(witnesses)
    kernels = []
    for cls in classes:
        syms = {(omega_quotient(w).symbol, gamma_normality(w)) for w in cls}
        if len(syms) != 1:
            raise RelationError("witnesses of one kernel disagree on quotient symbols")
        rep = cls[0]
        om = omega_quotient(rep)
        kernels.append(KernelDescriptor(
            p=p,
            trace_index=rep.trace_index,
            orbit_label=rep.root_index,
            degree=rep.degree,
            omega_symbol=om.symbol,
            gamma_symbol=gamma_normality(rep),
            case_letter=letter,
            witnesses=cls,
            omega_g=om.g,
            s_values=tuple(omega_quotient(w).s for w in cls),
        ))
    profile: dict[int, int] = {}
    for k in kernels:
        profile[k.degree] = profile.get(k.degree, 0) + 1
    expected = expected_kernel_profile(p, letter, witnesses)
    if profile != expected:
        raise RelationError(f"p={p}: kernel profile {profile} != expected {expected} for case ({letter})")
    return _assemble_row(p, letter, traces, kernels)


def _assemble_row(p: int, letter: str, traces, kernels: list[KernelDescriptor]) -> ClassificationRow:
    merged = len(kernels) == 1 and len(traces) > 1 or p == 5
    F = traces[0][1].field
    sqrt5 = None
    if p != 2 and F.n == 1:
        sqrt5 = sqrt(F(5))
    trace_values = [t for _, t in traces]
    if p == 5:
        trace_values = [F(2), F(-2)]
    discs, droots = [], []
    for t in trace_values:
        if p == 2:
            discs.append(None)
            droots.append(None)
            continue
        d = 4 * t + 5
        discs.append(d)
        droots.append(sqrt(d) if is_square(d) and d else None)
    counts, degrees, gsyms, osyms = [], [], [], []
    for i, _ in traces:
        weight = 0.0
        mine = []
        for k in kernels:
            tr = [w.trace_index for w in k.witnesses]
            share = tr.count(i) / len(tr)
            if share:
                weight += share
                mine.append(k)
        counts.append(int(round(weight)))
        degrees.append(sorted({k.degree for k in mine}))
        gsyms.append(sorted({k.gamma_symbol for k in mine}))
        osyms.append(sorted({k.omega_symbol for k in mine}))
    if merged:
        counts = [len(kernels)]
        degrees = [[kernels[0].degree]]
        gsyms = [[kernels[0].gamma_symbol]]
        osyms = [[kernels[0].omega_symbol]]
    for lst in (degrees, gsyms, osyms):
        for cell in lst:
            if len(cell) != 1:
                raise RelationError("a trace class mixes kernels with different quotient data")
    return ClassificationRow(
        p=p,
        sqrt5=sqrt5,
        traces=trace_values,
        discriminants=discs,
        discriminant_roots=droots,
        counts=counts,
        merged=merged,
        degrees=[c[0] for c in degrees],
        gamma_symbols=[c[0] for c in gsyms],
        omega_symbols=[c[0] for c in osyms],
        case_letter=letter,
        kernels=kernels,
    )


@lru_cache(maxsize=None)
def kernels_for_prime(p: int) -> tuple[KernelDescriptor, ...]:
    return tuple(classify_prime(p).kernels)


def select_kernel(p: int, trace_index: int = 1, root: int = 1) -> KernelDescriptor:
    """Kernel containing the witness for the given trace index and 1-based root."""
    for k in kernels_for_prime(p):
        for w in k.witnesses:
            if w.trace_index == trace_index and w.root_index == root - 1:
                return k
    raise KeyError(f"no kernel for p={p}, trace {trace_index}, root {root}")


def witness_for(p: int, trace_index: int = 1, root: int = 1) -> EpimorphismWitness:
    for w in witnesses_for_trace(p, trace_index):
        if w.root_index == root - 1:
            return w
    raise KeyError(f"no witness for p={p}, trace {trace_index}, root {root}")


def primes_up_to(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if is_prime(p)]
