"""Variable elimination by iterated pairwise resultants.

At each stage the polynomial of lowest degree in the current variable is the
pivot; its resultant with every other polynomial containing the variable
replaces them.  Each resultant is made primitive and square-free before the
next stage.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from ..errors import ZeroResultantError
from .normalize import content_primitive, poly_gcd, square_free
from .resultant import resultant_uni


@dataclass
class EliminationResult:
    remaining: list
    stages: list = field(default_factory=list)
    steps: list = field(default_factory=list)


def _degrees(p):
    return {v: p.degree(v) for v in p.used_vars()}


def _pair_resultant(args):
    pivot, q, var, divide_common, method = args
    info = {}
    if divide_common:
        g = poly_gcd(pivot, q)
        if g.degree(var) > 0:
            info["common_factor_degrees"] = _degrees(g)
            info["common_factor_terms"] = len(g)
            pivot = pivot.exact_div(g)
            q = q.exact_div(g)
            free = [x for x in (pivot, q) if x.degree(var) <= 0]
            if free:
                info["reduced_to_free"] = True
                return [x for x in free if not x.is_constant()], info
    return [resultant_uni(pivot, q, var, method=method)], info


def _normalize(p):
    content, prim = content_primitive(p)
    if prim.is_constant():
        return prim, str(content), False
    sqf = square_free(prim)
    return sqf, str(content), sqf != prim


def _dedupe(polys):
    out = []
    for p in polys:
        if p.is_constant():
            continue
        if all(p != q for q in out):
            out.append(p)
    return out


def eliminate(system, order, divide_common=False, method="auto", workers=1):
    """Eliminate the variables in ``order`` one by one.

    ``stages[i]`` is the polynomial list before variable ``order[i]`` is
    removed (kept for back-substitution).  With ``divide_common`` the gcd of
    each pivot/partner pair is divided out before the resultant; otherwise a
    vanishing resultant raises ZeroResultantError naming the stage.
    """
    current = _dedupe([_normalize(p)[0] for p in system if not p.is_zero()])
    result = EliminationResult(remaining=[])
    for stage, var in enumerate(order):
        result.stages.append(list(current))
        having = [p for p in current if p.degree(var) > 0]
        keep = [p for p in current if p.degree(var) <= 0]
        step = {"stage": stage, "var": var, "inputs": len(current), "with_var": len(having)}
        if not having:
            step["note"] = "variable absent"
            result.steps.append(step)
            continue
        having.sort(key=lambda p: (p.degree(var), len(p)))
        pivot, others = having[0], having[1:]
        step["pivot_degree"] = pivot.degree(var)
        jobs = [(pivot, q, var, divide_common, method) for q in others]
        if workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                outputs = list(pool.map(_pair_resultant, jobs))
        else:
            outputs = [_pair_resultant(j) for j in jobs]
        new, pairs = [], []
        for idx, (polys, info) in enumerate(outputs):
            pair = {"partner_degree": others[idx].degree(var), **info}
            for r in polys:
                if r.is_zero():
                    raise ZeroResultantError(
                        f"resultant in {var} vanished at stage {stage} (pair {idx})",
                        stage=stage, pair=idx,
                    )
                norm, content, reduced = _normalize(r)
                pair.setdefault("results", []).append({
                    "degrees": _degrees(norm),
                    "terms": len(norm),
                    "content_removed": content,
                    "square_free_reduced": reduced,
                    "constant": norm.is_constant(),
                })
                new.append(norm)
            pairs.append(pair)
        step["pairs"] = pairs
        current = _dedupe(keep + new)
        step["outputs"] = len(current)
        result.steps.append(step)
    result.remaining = current
    return result
