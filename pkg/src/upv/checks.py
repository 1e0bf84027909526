"""The check catalog: every verification in the suite, runnable by id.

Checks are grouped in dependency order (ideals, group action, cover,
invariants, bicanonical geometry); heavy intermediate artifacts (the lifted
group, enumerated point sets) are cached on the run context.  Parameter
draws come from one seeded stream per (purpose, prime); draws failing the
degeneracy predicate, or with vanishing last coordinate, or with collapsed
cubic nodes are rejected upfront, and draws that land on other components of
the discriminant over the small field are redrawn with the reason recorded.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import bicanon, cover, grouprep, invariants, unproj
from .report import CheckReport, Timer, report
from .scalars import GF
from .unproj import FamilyParams


@dataclass
class RunConfig:
    primes: Tuple[int, ...] = (13, 17, 29)
    seed: int = 0
    nu: Optional[Tuple[int, ...]] = None
    lam: Optional[str] = None
    max_degree: int = 4
    threads: int = 1
    output: Optional[str] = None
    timings: bool = False

    def validate(self):
        if not self.primes:
            raise ValueError("at least one prime is required")
        for p in self.primes:
            GF(p)  # raises with the eps requirement message when p != 1 mod 4
        if self.max_degree < 1:
            raise ValueError("max degree must be at least 1")
        if self.threads < 1:
            raise ValueError("thread count must be at least 1")


class RunContext:
    """Shared caches for one run; checks compute only what they need."""

    def __init__(self, cfg: RunConfig):
        cfg.validate()
        self.cfg = cfg
        self._group = None
        self._points: Dict[tuple, cover.SurfacePointSet] = {}
        self._rngs: Dict[str, random.Random] = {}

    def rng(self, purpose: str) -> random.Random:
        if purpose not in self._rngs:
            self._rngs[purpose] = random.Random((self.cfg.seed, purpose).__repr__())
        return self._rngs[purpose]

    def group(self) -> cover.FiniteProjGroup:
        if self._group is None:
            self._group, rep = cover.build_lifts_and_certify()
            if not rep.passed:
                raise RuntimeError(f"group certification failed: {rep.witness}")
        return self._group

    def draw_nu(self, p: int, purpose: str,
                require_distinct_nodes: bool = True) -> FamilyParams:
        """One generic parameter draw: rejects degenerate tuples, vanishing
        nu4, and (by default) collapsed-node tuples."""
        if self.cfg.nu is not None:
            return FamilyParams(GF(p), tuple(self.cfg.nu))
        rng = self.rng(f"{purpose}:{p}")
        while True:
            nu = FamilyParams(GF(p), tuple(rng.randrange(p) for _ in range(5)))
            degenerate, _ = nu.degenerate()
            if degenerate or not nu.nu[4]:
                continue
            if require_distinct_nodes and not bicanon.nodes_distinct(nu):
                continue
            return nu

    def points(self, p: int, nu: FamilyParams) -> cover.SurfacePointSet:
        key = (p, tuple(int(v) for v in nu.nu))
        if key not in self._points:
            self._points[key] = cover.enumerate_surface(p, nu, self.cfg.threads)
        return self._points[key]

    def smooth_points(self, p: int, purpose: str,
                      cap: int = 40) -> Tuple[cover.SurfacePointSet, List[str]]:
        """Draw until the enumerated surface is free and smooth over F_p;
        returns the accepted point set and the recorded redraws."""
        redraws = []
        for _ in range(cap):
            nu = self.draw_nu(p, purpose)
            pts = self.points(p, nu)
            rep = cover.certify_free_and_smooth(pts, self.group())
            if rep.passed:
                return pts, redraws
            problems = " | ".join(rep.witness.get("problems", []))
            if "fixes" in problems:
                raise RuntimeError(
                    f"free action failed for non-degenerate nu={nu.nu}: {problems}")
            redraws.append(f"nu={tuple(int(v) for v in nu.nu)}: rational singular "
                           f"point (discriminant mod {p})")
        raise RuntimeError(f"no smooth draw found over GF({p}) in {cap} attempts")


@dataclass(frozen=True)
class CheckDef:
    check_id: str
    description: str
    claim: str
    runner: Callable[[RunContext], CheckReport]


def _free_action_check(ctx: RunContext) -> CheckReport:
    with Timer() as tm:
        problems = []
        detail = {}
        for p in ctx.cfg.primes:
            accepted = []
            redrawn: List[str] = []
            for k in range(5):
                try:
                    pts, redraws = ctx.smooth_points(p, f"free{k}")
                except RuntimeError as exc:
                    problems.append(str(exc))
                    break
                redrawn.extend(redraws)
                accepted.append({"nu": [int(v) for v in pts.nu.nu],
                                 "points": pts.count})
            detail[str(p)] = {"accepted": accepted, "redraws": redrawn}
            if len(accepted) < 5:
                problems.append(f"GF({p}): only {len(accepted)} accepted draws")
        ok = not problems
    witness = {"per_prime": detail}
    if problems:
        witness["problems"] = problems
    return report("cover.free_action", ok, witness, tm.ms,
                  {"primes": list(ctx.cfg.primes), "seed": ctx.cfg.seed})


def _enumeration_check(ctx: RunContext) -> CheckReport:
    p = ctx.cfg.primes[0]
    with Timer() as tm:
        problems = []
        nu = ctx.draw_nu(p, "enum")
        pts = ctx.points(p, nu)
        oracle = cover.brute_force_count(p, nu)
        if oracle != pts.count:
            problems.append(f"chart count {pts.count} != naive count {oracle}")
        if pts.count % 2:
            problems.append(f"odd point count {pts.count}")
        rerun = cover.enumerate_surface(p, nu, ctx.cfg.threads)
        if rerun.points != pts.points:
            problems.append("enumeration is not deterministic")
        ycount = cover.y_point_count_report(p)
        if not ycount.passed:
            problems.append(f"image count failed: {ycount.witness}")
        ok = not problems
    witness = {"points": pts.count, "naive_oracle": oracle,
               "image_points": ycount.witness.get("image_points")}
    if problems:
        witness["problems"] = problems
    return report("cover.enumeration", ok, witness, tm.ms,
                  dict(nu.as_params(), prime=p, seed=ctx.cfg.seed))


def _ideal_census_check(ctx: RunContext) -> CheckReport:
    with Timer() as tm:
        problems = []
        j = unproj.build_unprojection_ideal()
        counts = j.counts()
        if counts != {"quadric": 3, "cubic": 32, "quartic": 28}:
            problems.append(f"J census {counts}")
        if not all(g.is_homogeneous() for g in j.polys()):
            problems.append("a generator is inhomogeneous")
        p = ctx.cfg.primes[0]
        nu = ctx.draw_nu(p, "census")
        t = unproj.build_t_ideal(nu)
        if len(t.generators) != 65:
            problems.append(f"T has {len(t.generators)} generators")
        # spot values of the section at the two basis parameter points
        from .scalars import QQ
        e4 = unproj.q_section(FamilyParams(QQ, (0, 0, 0, 0, 1)))
        if e4 != unproj.y_eigenvector(QQ):
            problems.append("section at (0,0,0,0,1) is not the signed y-sum")
        e0 = unproj.q_section(FamilyParams(QQ, (1, 0, 0, 0, 0)))
        if e0 != unproj.s_form(QQ, 0):
            problems.append("section at (1,0,0,0,0) is not s0")
        ok = not problems
    witness = {"J": counts, "T_generators": 65}
    if problems:
        witness["problems"] = problems
    return report("unproj.ideal_census", ok, witness, tm.ms)


def _sigma_pullback_check(ctx: RunContext) -> CheckReport:
    from .scalars import QQ
    with Timer() as tm:
        problems = []
        sig = cover.sigma_map(QQ)
        j = unproj.build_unprojection_ideal(QQ)
        nonzero = [name for name, g, _ in j.generators if not sig.apply(g).is_zero()]
        if nonzero:
            problems.append(f"sigma does not kill {nonzero}")
        if cover.z1_poly(QQ) != cover.z1_display(QQ):
            problems.append("sigma#(x00+x01) differs from the tabulated Z1")
        p = ctx.cfg.primes[0]
        nu = ctx.draw_nu(p, "census")
        _, zrep = cover.build_z2(nu)
        if not zrep.passed:
            problems.append(f"Z2 construction: {zrep.witness}")
        ok = not problems
    witness = {"generators_killed": 63, "z1": "matches display",
               "z2": "2*sigma#(q) matches display exactly"}
    if problems:
        witness["problems"] = problems
    return report("unproj.sigma_pullback", ok, witness, tm.ms)


def _hilbert_t_check(ctx: RunContext) -> CheckReport:
    nus = {p: [ctx.draw_nu(p, f"hilbert{k}") for k in range(3)]
           for p in ctx.cfg.primes}
    return invariants.hilbert_t_report(ctx.cfg.primes, nus,
                                       max_degree=max(2, ctx.cfg.max_degree))


def _s3_derivation_check(ctx: RunContext) -> CheckReport:
    with Timer() as tm:
        problems = []
        runs = 0
        for p in ctx.cfg.primes:
            for k in range(20):
                nu = ctx.draw_nu(p, f"s3d{k}")
                _, rep = bicanon.derive_s3_cubic(nu)
                runs += 1
                if not rep.passed:
                    problems.append(f"GF({p}) nu={tuple(int(v) for v in nu.nu)}")
        ok = not problems
    witness = {"draws": runs}
    if problems:
        witness["problems"] = problems
    return report("bicanon.s3_derivation", ok, witness, tm.ms,
                  {"primes": list(ctx.cfg.primes), "seed": ctx.cfg.seed})


def _s3_points_check(ctx: RunContext) -> CheckReport:
    p = ctx.cfg.primes[0]
    pts, redraws = ctx.smooth_points(p, "s3pts")
    rep = bicanon.scubic_points_report(pts)
    if redraws:
        rep.witness = dict(rep.witness, redraws=redraws)
    return rep


def _nodes_check(ctx: RunContext) -> CheckReport:
    rep = bicanon.verify_nodes(ctx.cfg.primes[0], draws=100, seed=ctx.cfg.seed)
    ok_paths, note = bicanon.nodes_error_paths()
    if not ok_paths:
        return report("bicanon.nodes", False,
                      dict(rep.witness, error_paths=note), rep.wall_ms, rep.params)
    rep.witness = dict(rep.witness, error_paths=note)
    return rep


def _plane_sections_check(ctx: RunContext) -> CheckReport:
    p = ctx.cfg.primes[0]
    nu = ctx.draw_nu(p, "sections")
    return bicanon.split_plane_sections(nu)


def _branch_loci_check(ctx: RunContext) -> CheckReport:
    """Containment must hold for every accepted draw; the itemized positive
    hits (each line and each conic visibly met) may accumulate across draws,
    since a single small-field draw can have an entirely non-rational branch
    curve upstairs."""
    p = ctx.cfg.primes[0]
    wanted_hits = [f"theta{i}.{kind}" for i in (1, 2, 3) for kind in ("line", "conic")]
    with Timer() as tm:
        accepted = 0
        redraws: List[str] = []
        problems = []
        details = []
        covered: Dict[str, int] = {k: 0 for k in wanted_hits}
        for k in range(25):
            if accepted >= 3 and all(covered.values()):
                break
            pts, smooth_redraws = ctx.smooth_points(p, f"branch{k}")
            redraws.extend(smooth_redraws)
            rep = bicanon.branch_locus_check(pts)
            if rep.witness.get("violations"):
                redraws.append(
                    f"nu={tuple(int(v) for v in pts.nu.nu)}: "
                    + " | ".join(rep.witness["violations"])[:160])
                continue
            accepted += 1
            hits = rep.witness.get("hits", {})
            for key in wanted_hits:
                covered[key] += hits.get(key, 0)
            details.append({"nu": [int(v) for v in pts.nu.nu], "hits": hits})
        if accepted < 3:
            problems.append(f"only {accepted} draws with clean containment")
        unseen = [k for k, n in covered.items() if not n]
        if unseen:
            problems.append(f"loci never visibly hit: {unseen}")
        ok = not problems
    witness = {"accepted_draws": details, "cumulative_hits": covered,
               "redraws": redraws}
    if problems:
        witness["problems"] = problems
    return report("bicanon.branch_loci", ok, witness, tm.ms,
                  {"prime": p, "seed": ctx.cfg.seed})


def _parameter_map_check(ctx: RunContext) -> CheckReport:
    from fractions import Fraction
    lam = Fraction(ctx.cfg.lam) if ctx.cfg.lam else Fraction(3)
    _, rep = bicanon.burniat_parameter_map(lam)
    p = ctx.cfg.primes[0]
    rng = ctx.rng("parmap")
    field = GF(p)
    for _ in range(20):
        lv = field.from_int(rng.randrange(2, p))
        neg = -lv
        if pow(int(neg), (p - 1) // 2, p) == 1:
            _, rep_p = bicanon.burniat_parameter_map(lv)
            if not rep_p.passed:
                return rep_p
            break
    return rep


CATALOG: List[CheckDef] = [
    CheckDef("unproj.ideal_census",
             "generator census of the unprojection ideal and the family section",
             "3 quadrics + 32 cubics + 28 quartics; 65 generators with the section",
             _ideal_census_check),
    CheckDef("unproj.sigma_pullback",
             "the covering map kills every generator and recovers Z1, Z2",
             "sigma#(g) = 0 for all 63 generators; 2 sigma#(q) = Z2",
             _sigma_pullback_check),
    CheckDef("unproj.phi_representations",
             "the four rational representations of each unprojection section agree",
             "cross-differences are monomial multiples of single quadrics",
             lambda ctx: unproj.phi_consistency_report()),
    CheckDef("unproj.quartic_witnesses",
             "dependence of the written quartics on the witness choice",
             "24 quartics have a unique written form; antipodal variants agree "
             "modulo the quadrics",
             lambda ctx: unproj.quartic_witness_report()),
    CheckDef("unproj.plane_incidences",
             "pairwise intersections of the 8 unprojected linear spaces",
             "24 pairs meet in lines (rank 6), 4 antipodal pairs are disjoint (rank 8)",
             lambda ctx: unproj.verify_plane_incidences()),
    CheckDef("unproj.elimination_cubic",
             "eliminating the weight-2 variables from the section",
             "x00*q rewrites to the cubic x00*l + nu4*(x10+x11)(x20+x21)(x30+x31)",
             lambda ctx: unproj.elimination_cubic_report(
                 ctx.draw_nu(ctx.cfg.primes[0], "elim"))),
    CheckDef("unproj.jacobian_minor",
             "the 12x12 Jacobian minors at the weight-2 coordinate points",
             "each determinant equals +-y^11",
             lambda ctx: unproj.verify_jacobian_minor()),
    CheckDef("unproj.veronese_chart",
             "the symmetric-matrix chart at a weight-1 coordinate point",
             "all 2x2 minors of the 4x4 symmetric matrix vanish on the chart",
             lambda ctx: unproj.verify_veronese_chart()),
    CheckDef("grouprep.table1_relations",
             "the six signed-permutation generators",
             "six commuting involutions acting as tabulated",
             lambda ctx: grouprep.table1_relations_report()),
    CheckDef("grouprep.subgroup_census",
             "the order-8 and order-32 subgroups and the three cosets",
             "|G| = 8, |H| = 32, theta_i are disjoint 8-element cosets",
             lambda ctx: grouprep.subgroup_census_report()),
    CheckDef("grouprep.regular_representation",
             "characters on the weight-1 span and the signed y-sums",
             "regular character on the x-span; 8 eigenvectors realize all characters",
             lambda ctx: grouprep.check_regular_representation()),
    CheckDef("grouprep.fixed_loci",
             "eigen-conditions cutting the fixed loci of the involutions",
             "constraints are eigenvectors; reference displays match",
             lambda ctx: grouprep.fixed_loci_report()),
    CheckDef("grouprep.q_invariance",
             "which words preserve the section up to sign",
             "exactly the even-exponent words send q to +-q",
             lambda ctx: grouprep.q_invariance_report(
                 ctx.cfg.primes[0], seed=ctx.cfg.seed)),
    CheckDef("grouprep.j_stability",
             "stability of the 63 generators under the full group",
             "every word permutes the generators up to sign",
             lambda ctx: grouprep.j_generator_stability_report()),
    CheckDef("grouprep.delta_set",
             "parameters at which the three-letter involution has fixed points",
             "fixed points appear exactly at delta = +-8*eps",
             lambda ctx: grouprep.delta_set_report(
                 ctx.cfg.primes[0], seed=ctx.cfg.seed)),
    CheckDef("cover.sigma_deck",
             "the deck involution commutes with the covering map",
             "s rescales every pullback by (-1)^weight",
             lambda ctx: cover.sigma_deck_report()),
    CheckDef("cover.group_structure",
             "closure and certification of the lifted group",
             "order 16, statistics (1,3,12), unique common square, Z/2 x Q8",
             lambda ctx: cover.build_lifts_and_certify()[1]),
    CheckDef("cover.z2_construction",
             "the multidegree-(2,2,2,2) equation of the surface family",
             "2 sigma#(q) equals the display and is group-semi-invariant",
             lambda ctx: cover.build_z2(
                 ctx.draw_nu(ctx.cfg.primes[0], "z2"))[1]),
    CheckDef("cover.branch_structure",
             "branching of the degree-2 covering map",
             "16 deck fixed points; local pullback ideal is the squared maximal ideal",
             lambda ctx: cover.verify_branch_structure(ctx.cfg.primes[0])),
    CheckDef("cover.enumeration",
             "chart enumeration against the naive oracle",
             "chart-partitioned counts match the full scan; image count matches",
             _enumeration_check),
    CheckDef("cover.free_action",
             "freeness and smoothness over all configured primes",
             "no nontrivial element fixes a point; Jacobian rank 2 everywhere",
             _free_action_check),
    CheckDef("cover.hplane_decomposition",
             "the hyperplane sections of the image decompose as stated",
             "each section is one coordinate point plus six quartic surfaces",
             lambda ctx: cover.verify_hplane_decomposition(ctx.cfg.primes[0])),
    CheckDef("invariants.hilbert_x",
             "Hilbert function of the quadric complete intersection",
             "h_X(d) matches the series of 3 quadrics in 8 variables, d <= 6",
             lambda ctx: invariants.hilbert_x_report(ctx.cfg.primes[0], 6)),
    CheckDef("invariants.hilbert_t",
             "Hilbert function of the family surfaces across primes and draws",
             "h_T = 1, 7, 32, 80, 152 in degrees 0..4",
             _hilbert_t_check),
    CheckDef("invariants.hilbert_v",
             "Hilbert function of the key 3-fold",
             "h_V(1) = 7; higher degrees stable across primes",
             lambda ctx: invariants.hilbert_v_report(ctx.cfg.primes[:2])),
    CheckDef("invariants.intersection_numbers",
             "intersection numbers in the cohomology of (P^1)^4",
             "H^4 = 24; degree 12 downstairs; K^2 = 24 for the surfaces",
             lambda ctx: invariants.intersection_numbers_report()),
    CheckDef("bicanon.s3_derivation",
             "the squaring derivation of the bicanonical cubic",
             "an exact polynomial identity for random parameters over 3 primes",
             _s3_derivation_check),
    CheckDef("bicanon.s3_points",
             "enumerated surface points land on the bicanonical cubic",
             "100% of images satisfy the cubic",
             _s3_points_check),
    CheckDef("bicanon.nodes",
             "the three nodes of the bicanonical cubic",
             "gradient vanishes and the Hessian has full rank at each node",
             _nodes_check),
    CheckDef("bicanon.plane_sections",
             "plane sections of the cubic split as line plus conic",
             "restriction to s_i = -s0 factors exactly; node lines lie on the cubic",
             _plane_sections_check),
    CheckDef("bicanon.branch_loci",
             "branch loci of the degree-4 quotient map",
             "fixed-point images land in C_{i+1} + L_{i-1} + {n_i} (+ corner)",
             _branch_loci_check),
    CheckDef("burniat.nodes",
             "the 24 double points of the special pencil chart",
             "F1 = F2 = 0 on all 24 points with Hessian diagonal -4",
             lambda ctx: bicanon.burniat_nodes_report()),
    CheckDef("burniat.charts",
             "the torus chart and the pencil generators",
             "pullbacks are -F1 and F2 exactly; the chart lies on the 3-fold",
             lambda ctx: bicanon.burniat_charts_report()),
    CheckDef("burniat.f3",
             "smoothness of the pencil member along the second chart",
             "the two partials at x00 = 0 have no common zero off the axes",
             lambda ctx: bicanon.burniat_f3_report()),
    CheckDef("burniat.lambda_identity",
             "the plane-model identity",
             "(lam+1)^2 prod(s_i - s0) + 2 lam s0 (sum s_i - s0)^2 = 0 identically",
             lambda ctx: bicanon.lambda_identity_report()),
    CheckDef("burniat.parameter_map",
             "matching the pencil against the plane model",
             "nu4 = (lambda+1)/4 empirically; printed 4(lambda+1) off by 16",
             _parameter_map_check),
]

ALIASES = {
    "bicanon.lambda_identity": "burniat.lambda_identity",
    "bicanon.burniat_nodes": "burniat.nodes",
    "bicanon.burniat_charts": "burniat.charts",
    "bicanon.burniat_f3": "burniat.f3",
    "bicanon.parameter_map": "burniat.parameter_map",
}

SUITES = ("all", "unproj", "grouprep", "cover", "invariants", "bicanon", "burniat")


def resolve_targets(targets: Sequence[str]) -> List[CheckDef]:
    by_id = {c.check_id: c for c in CATALOG}
    if not targets:
        targets = ["all"]
    chosen: List[CheckDef] = []
    seen = set()
    for t in targets:
        t = ALIASES.get(t, t)
        if t == "all":
            wanted = list(CATALOG)
        elif t in SUITES:
            wanted = [c for c in CATALOG if c.check_id.startswith(t + ".")]
        elif t in by_id:
            wanted = [by_id[t]]
        else:
            raise KeyError(t)
        for c in wanted:
            if c.check_id not in seen:
                seen.add(c.check_id)
                chosen.append(c)
    return chosen


def run_checks(defs: Sequence[CheckDef], ctx: RunContext) -> List[CheckReport]:
    out = []
    for d in defs:
        try:
            rep = d.runner(ctx)
        except Exception as exc:  # a crashed check is a failed check
            rep = report(d.check_id, False, {"error": f"{type(exc).__name__}: {exc}"})
        out.append(rep)
    return out
