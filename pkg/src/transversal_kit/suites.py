"""Verification suites shared by the CLI and the acceptance tests.

Each suite returns a :class:`Report`; identical arguments give identical
reports.
"""

from __future__ import annotations

import math

import numpy as np

from . import division, sphere
from . import extension as ext
from . import quasigroup as qg
from .catalog import catalog_group, catalog_names
from .perm import equal_groups
from .report import Report
from .transversal import (all_subgroups, core_is_trivial, enumerate_transversals, h_sub_s, induced_quasigroup,
                          phi, right_cosets, sample_transversals, torsion_via_phi, transversal_count)

DEFAULT_SEED = 20051101
EPS_SEQUENCE = (1e-2, 1e-3, 1e-4, 1e-5)


def sweep(max_exhaustive: int = 12, max_order: int = 24, per_pair: int = 200, seed: int = DEFAULT_SEED):
    """Yield (name, G, H, transversals, exhaustive) over the catalog.

    Groups of order <= max_exhaustive get every transversal, larger ones up to
    ``per_pair`` sampled transversals per subgroup.
    """
    for name in catalog_names():
        G = catalog_group(name)
        if G.n > max_order:
            continue
        for k, H in enumerate(all_subgroups(G)):
            if G.n <= max_exhaustive:
                ts = list(enumerate_transversals(G, H, cap=10 ** 7))
                yield name, G, H, ts, True
            else:
                yield name, G, H, sample_transversals(G, H, per_pair, seed + 7919 * k), False


def label_set(G, members):
    return [G.labels[m] for m in members]


def find_nonisomorphic_transversals(names=None):
    """First (group, subgroup, t1, t2) in catalog order with non-isomorphic induced quasigroups."""
    for name in names or catalog_names():
        G = catalog_group(name)
        if G.n > 12:
            continue
        for H in all_subgroups(G):
            if H.order in (1, G.n):
                continue
            ts = list(enumerate_transversals(G, H))
            qs = [induced_quasigroup(t) for t in ts]
            for i in range(1, len(ts)):
                if qg.isomorphic(qs[0], qs[i]) is None:
                    return name, G, H, ts[0], ts[i]
    return None


def finite_sweep_report(max_exhaustive: int = 12, max_order: int = 24, per_pair: int = 200,
                        seed: int = DEFAULT_SEED, universal: bool = True) -> Report:
    """Induced quasigroups, torsion independence, universal homomorphism and
    torsion/group equivalence over the whole catalog."""
    rep = Report("sweep", seed=seed)
    counts = {"pairs": 0, "transversals": 0, "exhaustive_transversals": 0}
    invalid, torsion_mismatch, hom_fail, equiv_fail, image_fail = [], [], [], [], []
    for name, G, H, ts, exhaustive in sweep(max_exhaustive, max_order, per_pair, seed):
        counts["pairs"] += 1
        for t in ts:
            counts["transversals"] += 1
            where = {"group": name, "subgroup": label_set(G, H.members), "reps": label_set(G, t.reps)}
            try:
                q = induced_quasigroup(t)
            except AssertionError as exc:
                invalid.append({**where, "error": str(exc)})
                continue
            if not exhaustive:
                continue
            counts["exhaustive_transversals"] += 1
            tors = ext.torsion_group(q)
            if not equal_groups(torsion_via_phi(t), tors):
                torsion_mismatch.append(where)
            if tors.is_trivial() != qg.is_group(q):
                equiv_fail.append(where)
            if universal:
                E = ext.build_universal_extension(q)
                hom = ext.universal_hom(t, E)
                ok = not ext.hom_violations(t, hom, E, limit=1)
                ok = ok and all(hom[x] == E.embed(i) for i, x in enumerate(t.reps))
                ok = ok and all(hom[a].h in E.hpart and hom[a].x == 0 for a in H.members)
                if not ok:
                    hom_fail.append(where)
            if t.generates():
                image = {phi(t, g) for g in range(G.n)}
                T = ext.ExtensionGroup(q, tors)
                torsion_ext = {ext.as_permutation(T, el) for el in T.elements} \
                    if T.order <= ext.DEFAULT_TABLE_CAP else None
                faithful = len(image) == G.n
                if torsion_ext is not None and image != torsion_ext:
                    image_fail.append(where)
                if core_is_trivial(G, H) and not faithful:
                    image_fail.append({**where, "issue": "phi not injective with trivial core"})
    rep.add("induced_quasigroup_valid", passed=not invalid, **counts, violations=invalid[:5])
    rep.add("torsion_independence", passed=not torsion_mismatch,
            checked=counts["exhaustive_transversals"], violations=torsion_mismatch[:5])
    if universal:
        rep.add("universal_hom", passed=not hom_fail,
                checked=counts["exhaustive_transversals"], violations=hom_fail[:5])
    rep.add("torsion_trivial_iff_group", passed=not equiv_fail,
            checked=counts["exhaustive_transversals"], violations=equiv_fail[:5])
    rep.add("phi_image_is_torsion_extension", passed=not image_fail, violations=image_fail[:5])
    return rep


def random_quasigroups(count: int, seed: int, sizes=range(2, 7)) -> list[qg.RightQuasigroup]:
    rng = np.random.default_rng(seed)
    sizes = list(sizes)
    ns = rng.choice(sizes, size=count)
    seeds = rng.integers(0, 2 ** 31, size=count)
    return [qg.random_quasigroup(int(n), int(s)) for n, s in zip(ns, seeds)]


def check_extension(q: qg.RightQuasigroup, rep: Report, tag: str = "", samples: int = 10_000,
                    seed: int = DEFAULT_SEED, exhaustive_limit: int = 500):
    """Group axioms and round trip for the torsion and universal extensions of q."""
    where = {"quasigroup": tag} if tag else {}
    T = ext.build_torsion_extension(q)
    U = ext.build_universal_extension(q)
    for kind, E, expected in (("torsion", T, None), ("universal", U, math.factorial(q.n))):
        found = ext.verify_extension(E, exhaustive_limit, samples, seed)
        axioms = found["associative"] and found["identity"] and found["inverse"] and found["closed"]
        rep.add(f"{kind}_extension_axioms", passed=axioms, **where, **found)
        if expected is not None:
            rep.add(f"{kind}_extension_order", passed=E.order == expected, **where,
                    order=E.order, expected=expected)
        rt = ext.transversal_roundtrip(q, E)
        rep.add(f"{kind}_roundtrip", passed=rt.table == q.table, **where)
    rep.add("torsion_trivial_iff_group", passed=T.hpart.is_trivial() == qg.is_group(q), **where,
            torsion_order=T.hpart.order, is_group=qg.is_group(q))
    return T, U


def extension_suite(count: int = 100, seed: int = DEFAULT_SEED, samples: int = 10_000) -> Report:
    rep = Report("extension-suite", seed=seed)
    for i, q in enumerate(random_quasigroups(count, seed)):
        check_extension(q, rep, tag=f"random[{i}] n={q.n}", samples=samples, seed=seed + i)
    return rep


def _tol(default: float, override):
    return default if override is None else override


def sphere_suite(n: int, samples: int, seed: int, tol=None) -> Report:
    """Pointwise laws of the sphere transversal plus its (dis)continuity probes."""
    rep = Report("sphere", n=n, seed=seed, samples=samples)
    rng = np.random.default_rng(seed)
    e0 = sphere.basis(n)
    x = sphere.random_unit(n, samples, rng)
    y = sphere.random_unit(n, samples, rng)
    z = sphere.random_unit(n, samples, rng)
    # include the branch point and the identity explicitly
    x = np.vstack([x, -e0, e0])
    y = np.vstack([y, e0, -e0])
    z = np.vstack([z, -e0, e0])

    def mx(v):
        return float(np.max(v)) if np.size(v) else 0.0

    raw = sphere.circ(x, y, renormalize=False)
    rep.residual("norm", mx(np.abs(np.linalg.norm(raw, axis=-1) - 1)), _tol(1e-12, tol))
    rep.residual("right_identity", mx(np.linalg.norm(sphere.circ(x, e0, renormalize=False) - x, axis=-1)),
                 _tol(1e-12, tol))
    rep.residual("left_identity", mx(np.linalg.norm(sphere.circ(e0, y, renormalize=False) - y, axis=-1)),
                 _tol(1e-12, tol))
    rt = sphere.circ(sphere.chi_sphere(x, y), x, renormalize=False)
    rep.residual("chi_roundtrip", mx(np.linalg.norm(rt - y, axis=-1)), _tol(1e-10, tol))
    back = sphere.chi_sphere(x, sphere.circ(z, x, renormalize=False))
    rep.residual("chi_unique", mx(np.linalg.norm(back - z, axis=-1)), _tol(1e-10, tol))
    rep.residual("section", mx(sphere.section_residuals(x)), _tol(1e-12, tol))
    rep.residual("coset_consistency", mx(sphere.coset_residuals(x, y)), _tol(1e-10, tol))

    m = min(samples, 200)
    ortho = [float(np.max(np.abs(R.matrix.T @ R.matrix - np.eye(n)))) for R in
             (sphere.r_map(v) for v in x[:m])]
    rep.residual("r_map_orthogonal", max(ortho, default=0.0), _tol(1e-10, tol), checked=m)
    jj = sphere.j_map(sphere.j_map(x, e0), e0)
    rep.residual("j_involution", mx(np.linalg.norm(jj - x, axis=-1)), _tol(1e-12, tol))
    u = sphere.random_unit(n, samples, rng)
    rr = sphere.reflect_line(u, sphere.reflect_line(u, x[:samples]))
    rep.residual("reflection_involution", mx(np.linalg.norm(rr - x[:samples], axis=-1)), _tol(1e-12, tol))
    branch = sphere.r_map(-e0).matrix
    rep.add("branch_minus_identity", passed=bool(np.array_equal(branch, -np.eye(n))))
    cond = sphere.conditioning(x)
    rep.add("conditioning", ill_conditioned=int((cond == "ill").sum()), branch=int((cond == "branch").sum()))

    if n >= 3:
        rows = sphere.discontinuity_witness(n, EPS_SEQUENCE)
        worst = max(abs(r["distance"] - 2.0) for r in rows if r["eps"] <= 1e-4)
        rep.add("discontinuity_witness", passed=worst <= 1e-3, max_gap_to_2=worst, tol=1e-3,
                sequence=rows)
        e0_jump = max(r["e0_distance"] for r in rows if r["eps"] <= 1e-4)
        rep.add("section_e0_continuous", passed=e0_jump <= 1e-3, max_e0_distance=e0_jump)
        found = sphere.nonassociativity_witness(n, seed, budget=100)
        rep.add("nonassociativity_witness", passed=found is not None,
                residual=None if found is None else found[3],
                triple=None if found is None else [list(map(float, v)) for v in found[:3]])
    else:
        rep.add("discontinuity_witness", skipped=True, note="needs n >= 3")
        assoc = sphere.circ(sphere.circ(x, y), z) - sphere.circ(x, sphere.circ(y, z))
        rep.add("sampled_associator", max_residual=mx(np.linalg.norm(assoc, axis=-1)))
    probe = sphere.continuity_probe(n, min(samples, 1000), 1e-6, seed)
    rep.add("continuity_probe", passed=probe["max_modulus"] is None or math.isfinite(probe["max_modulus"]),
            **{k: v for k, v in probe.items() if k not in ("n", "seed", "samples")})
    return rep


def cayley_suite(dim: int, samples: int, seed: int, tol=None) -> Report:
    rep = Report("cayley", dim=dim, seed=seed, samples=samples)
    r = division.quasigroup_laws_report(dim, samples, seed)
    limit = _tol(1e-12, tol)
    for law, value in r["residuals"].items():
        rep.residual(law, value, limit)
    rep.add("associativity", passed=r["associative"] == (dim <= 4), associative=r["associative"],
            witness=r["associativity_witness"], sampled_max_associator=r["sampled_max_associator"])
    if dim == 8:
        w = r["associativity_witness"]
        rep.add("nonassociativity_witness", passed=w is not None and w["residual"] > 0.5,
                residual=None if w is None else w["residual"])
    if dim >= 4:
        rep.add("noncommutativity_witness", passed=r["commutativity_witness"] is not None,
                witness=r["commutativity_witness"])
    return rep


def single_transversal(rep: Report, t, cap_closure: int = math.factorial(10), classes=None) -> bool:
    """Record one transversal; returns whether both torsion computations agree."""
    G = t.parent
    q = induced_quasigroup(t)
    tors = ext.torsion_group(q, cap=cap_closure)
    same = equal_groups(torsion_via_phi(t, cap=cap_closure), tors)
    cid = None
    if classes is not None:
        for cid, rq in enumerate(classes):
            if qg.isomorphic(q, rq) is not None:
                break
        else:
            cid = len(classes)
            classes.append(q)
    rep.add("transversal", passed=same,
            subgroup=label_set(G, t.subgroup.members), reps=label_set(G, t.reps),
            table=[list(row) for row in q.table], torsion_order=tors.order,
            h_s_order=h_sub_s(t).order, is_group=qg.is_group(q), iso_class=cid)
    return same


def transversals_report(name: str, G, subgroups, cap_enum: int, samples: int, seed: int,
                        generating_only: bool = False, cap_closure: int = math.factorial(10)) -> Report:
    rep = Report("transversals", group=name, seed=seed)
    for k, H in enumerate(subgroups):
        total = transversal_count(G, H)
        if total <= cap_enum:
            ts = list(enumerate_transversals(G, H, generating_only, cap=cap_enum))
            mode = "exhaustive"
        else:
            ts = sample_transversals(G, H, samples, seed + k)
            if generating_only:
                ts = [t for t in ts if t.generates()]
            mode = "sampled"
        classes: list[qg.RightQuasigroup] = []
        mismatches = sum(not single_transversal(rep, t, cap_closure, classes) for t in ts)
        rep.add("subgroup_summary", passed=mismatches == 0, subgroup=label_set(G, H.members),
                index=len(right_cosets(G, H)), transversals=len(ts), total=total, mode=mode,
                iso_classes=len(classes), core_trivial=core_is_trivial(G, H))
    return rep
