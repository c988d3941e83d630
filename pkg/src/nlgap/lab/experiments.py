"""Desk-scale experiment drivers with deterministic seeding.

Each driver samples random regular graphs, measures the quantities its
theorem talks about, and re-checks only the module-level invariants of the
operations it calls (flags in the per-trial records).  Trials are pure
functions of (config, trial index); the reduction is ordered by index, so
reruns are byte-identical for any worker count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .. import graphs, metric, spectral
from ..embedding import bourgain_embed, compose_map, distortion
from ..gamma import (SearchStrategy, VertexMap, balanced_map, gamma_sup_estimate,
                     gamma_value, gamma_vector, in_function_class, partition_stats)
from .config import ConfigError, ExperimentConfig, delta_rule_value
from .runner import AUX_STREAM, run_indexed, seed_label, trial_rng

__all__ = [
    "TrialRecord",
    "ExperimentResult",
    "run_experiment",
    "run_typical_experiment",
    "run_growing_d_experiment",
    "run_fixed_function_experiment",
    "run_fixed_h_experiment",
    "run_concentration_experiment",
    "run_errorbound_experiment",
    "run_diameter_experiment",
    "emit_results",
    "format_cell",
]

_EPS_GAMMA = 1e-12  # slack on the universal gamma >= 1/4 bound
_EPS_CHAIN = 1e-9   # relative slack on measured inequality chains


@dataclass
class TrialRecord:
    index: int
    seed: int
    n: int
    m: int
    d: int
    values: dict = field(default_factory=dict)

    def cell(self, column):
        if column == "index":
            return self.index
        if column == "seed":
            return self.seed
        if column in ("n", "m", "d"):
            return getattr(self, column)
        return self.values.get(column)

    def flags_ok(self):
        return all(v for k, v in self.values.items()
                   if k.endswith("_ok") and v is not None)


@dataclass
class ExperimentResult:
    name: str
    columns: list
    records: list
    summary: dict
    passed: bool


BASE_COLUMNS = ["index", "seed", "n", "m", "d"]


def format_cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.17g}"
    return str(x)


def emit_results(records, path, columns):
    """Deterministic CSV: header row, one row per trial, 17-digit floats."""
    lines = [",".join(columns)]
    for rec in records:
        lines.append(",".join(format_cell(rec.cell(c)) for c in columns))
    text = "\n".join(lines) + "\n"
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)
    return path


def _sample_connected_regular(n, d, rng, limit=1000):
    """Simple d-regular sample, resampled until connected (a.a.s. immediate)."""
    for resample in range(limit):
        g, _ = graphs.sample_simple_regular(n, d, rng)
        if metric.is_connected(g):
            return g, resample
    raise graphs.SamplingError(f"no connected sample in {limit} tries", limit)


def _climbs_monotone(result):
    for climb in result.climbs:
        gams = [x for x in climb.gammas if x is not None]
        if any(b <= a for a, b in zip(gams, gams[1:])):
            return False
    return True


def _gamma_stats(records, key="gamma"):
    return [rec.values[key] for rec in records
            if rec.values.get(key) is not None]


# ---------------------------------------------------------------------------
# typical-function experiments (fixed d, and growing d)
# ---------------------------------------------------------------------------


def _class_combos(cfg: ExperimentConfig, rule: str):
    if rule == "theorem3" or cfg.experiment == "growing-d":
        if not (len(cfg.n) == len(cfg.m) == len(cfg.d)):
            raise ConfigError("growing-d needs n, m, d lists of equal length")
        combos = list(zip(cfg.n, cfg.m, cfg.d))
        for n, m, d in combos:
            if m > n:
                raise ConfigError(f"need m <= n, got m={m}, n={n}")
            if d > math.sqrt(m) / 2:
                raise ConfigError(f"growing-d needs d <= sqrt(m)/2, got d={d}, m={m}")
    else:
        combos = [(n, m, d) for d in cfg.d for n in cfg.n for m in cfg.m if m <= n]
    if not combos:
        raise ConfigError("no (n, m, d) combination with m <= n")
    for n, m, d in combos:
        delta = delta_rule_value(rule, cfg.delta, m, d, cfg.epsilon)
        if math.floor(n / delta) < math.ceil(n / m):
            raise ConfigError(
                f"delta_m = {delta:.4g} leaves F(delta) empty for n={n}, m={m}")
    return combos


def _trial_class(payload, idx):
    cfg, combos, rule = payload
    n, m, d = combos[idx // cfg.trials]
    rng = trial_rng(cfg.master_seed, idx)
    g, _ = graphs.sample_simple_regular(n, d, rng)
    h, h_resamples = _sample_connected_regular(m, d, rng)
    dist_h = metric.all_pairs_distances(h)
    delta = delta_rule_value(rule, cfg.delta, m, d, cfg.epsilon)
    strat = SearchStrategy(restarts=cfg.restarts, samples=cfg.samples,
                           move_budget=cfg.move_budget, delta=delta)
    res = gamma_sup_estimate(g, dist_h, strat, rng)
    gam = res.report.gamma
    stats = partition_stats(res.best_map)
    values = {
        "delta": delta,
        "gamma": gam,
        "pair_sum": res.report.pair_sum,
        "edge_sum": res.report.edge_sum,
        "degenerate": res.report.degenerate,
        "max_size": stats.max_size,
        "sample_best_gamma": res.sample_best_gamma,
        "moves": res.moves_total,
        "h_resamples": h_resamples,
        "in_class_ok": in_function_class(res.best_map, delta),
        "trace_monotone_ok": _climbs_monotone(res),
        "lower_bound_ok": None if gam is None else gam >= 0.25 - _EPS_GAMMA,
    }
    return TrialRecord(idx, seed_label(cfg.master_seed, idx), n, m, d, values)


_CLASS_COLUMNS = BASE_COLUMNS + [
    "delta", "gamma", "pair_sum", "edge_sum", "degenerate", "max_size",
    "sample_best_gamma", "moves", "h_resamples",
    "in_class_ok", "trace_monotone_ok", "lower_bound_ok"]


def _run_class_experiment(cfg: ExperimentConfig, rule: str, name: str):
    combos = _class_combos(cfg, rule)
    records = run_indexed(_trial_class, (cfg, combos, rule),
                          len(combos) * cfg.trials, cfg.workers)
    summary = {}
    for ci, (n, m, d) in enumerate(combos):
        chunk = records[ci * cfg.trials:(ci + 1) * cfg.trials]
        gams = _gamma_stats(chunk)
        if gams:
            summary[f"max_gamma[n={n},m={m},d={d}]"] = max(gams)
            summary[f"p95_gamma[n={n},m={m},d={d}]"] = float(np.percentile(gams, 95))
    passed = all(rec.flags_ok() for rec in records)
    return ExperimentResult(name, _CLASS_COLUMNS, records, summary, passed)


def run_typical_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Adversarial gamma over F(delta_m) with the fixed-d threshold rule."""
    return _run_class_experiment(cfg, cfg.delta_rule if cfg.delta_rule == "explicit"
                                 else "theorem2", "typical")


def run_growing_d_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Same protocol with the growing-d threshold rule and d <= sqrt(m)/2."""
    return _run_class_experiment(cfg, cfg.delta_rule if cfg.delta_rule == "explicit"
                                 else "theorem3", "growing-d")


# ---------------------------------------------------------------------------
# fixed-function families
# ---------------------------------------------------------------------------


def _family_map(cfg: ExperimentConfig, n: int, m: int) -> VertexMap:
    fam = cfg.family
    if fam == "balanced":
        return balanced_map(n, m)
    if fam == "two_block":
        if m < 2:
            raise ConfigError("two_block needs m >= 2")
        rho = float(cfg.family_param)
        if not 0 <= rho <= 1:
            raise ConfigError("two_block parameter must be in [0, 1]")
        vals = np.ones(n, dtype=np.int32)
        vals[:int(math.floor(rho * n))] = 0
        return VertexMap(vals, m)
    if fam == "near_constant":
        if m < 2:
            raise ConfigError("near_constant needs m >= 2")
        k = int(cfg.family_param)
        if not 0 <= k <= n:
            raise ConfigError("near_constant parameter must be in [0, n]")
        vals = np.zeros(n, dtype=np.int32)
        vals[:k] = 1
        return VertexMap(vals, m)
    if fam == "from_file":
        if cfg.map_path is None:
            raise ConfigError("family=from_file needs map_path")
        with open(cfg.map_path, encoding="ascii") as fh:
            return VertexMap.from_text(fh.read())
    raise ConfigError(f"unknown function family {cfg.family!r}")


def _load_host(cfg: ExperimentConfig):
    if cfg.host_path is None:
        return None
    with open(cfg.host_path, encoding="ascii") as fh:
        return graphs.read_edge_list(fh.read())


def _trial_fixed_function(payload, idx):
    cfg, combos, host = payload
    n, d = combos[idx // cfg.trials]
    rng = trial_rng(cfg.master_seed, idx)
    g, _ = graphs.sample_simple_regular(n, d, rng)
    if host is not None:
        h, h_resamples = host, 0
    else:
        h, h_resamples = _sample_connected_regular(cfg.m[0], d, rng)
    dist_h = metric.all_pairs_distances(h)
    f = _family_map(cfg, n, h.n)
    rep = gamma_value(g, dist_h, f)
    diam = dist_h.diameter()
    gam = rep.gamma
    values = {
        "family": cfg.family,
        "family_param": cfg.family_param,
        "gamma": gam,
        "degenerate": rep.degenerate,
        "pair_over_n2": rep.pair_sum / n**2,
        "edge_over_dn": rep.edge_sum / (d * n),
        "host_diameter": diam,
        "h_resamples": h_resamples,
        "lower_bound_ok": None if gam is None else gam >= 0.25 - _EPS_GAMMA,
        "near_zero_pair_ok": None,
        "two_block_band_ok": None,
        "envelope_ok": None,
    }
    if cfg.family == "near_constant":
        k = int(cfg.family_param)
        # at most 2kn - k^2 ordered pairs have distinct images
        values["near_zero_pair_ok"] = rep.pair_sum <= (2 * k * n - k * k) * diam**2
    if (cfg.family == "two_block" and float(cfg.family_param) == 0.5
            and h.n == 2 and n >= 500 and gam is not None):
        values["two_block_band_ok"] = 0.5 <= gam <= 2.0
    if cfg.family == "balanced" and gam is not None:
        values["envelope_ok"] = gam <= cfg.gamma_envelope
    return TrialRecord(idx, seed_label(cfg.master_seed, idx), n, h.n, d, values)


_FIXED_FN_COLUMNS = BASE_COLUMNS + [
    "family", "family_param", "gamma", "degenerate", "pair_over_n2",
    "edge_over_dn", "host_diameter", "h_resamples", "lower_bound_ok",
    "near_zero_pair_ok", "two_block_band_ok", "envelope_ok"]


def run_fixed_function_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """gamma(G, d_H, f_n) for deterministic map families (balanced, two-block,
    near-constant, from file); both sides of the defining ratio are recorded
    so the extreme families' vanishing behavior is visible in the data."""
    host = _load_host(cfg)
    if host is not None and not metric.is_connected(host):
        raise ConfigError("fixed host graph must be connected")
    combos = [(n, d) for d in cfg.d for n in cfg.n]
    records = run_indexed(_trial_fixed_function, (cfg, combos, host),
                          len(combos) * cfg.trials, cfg.workers)
    summary = {}
    for ci, (n, d) in enumerate(combos):
        chunk = records[ci * cfg.trials:(ci + 1) * cfg.trials]
        gams = _gamma_stats(chunk)
        if gams:
            summary[f"max_gamma[n={n},d={d}]"] = max(gams)
        summary[f"mean_pair_over_n2[n={n},d={d}]"] = float(
            np.mean([r.values["pair_over_n2"] for r in chunk]))
        summary[f"mean_edge_over_dn[n={n},d={d}]"] = float(
            np.mean([r.values["edge_over_dn"] for r in chunk]))
    passed = all(rec.flags_ok() for rec in records)
    return ExperimentResult("fixed-function", _FIXED_FN_COLUMNS, records,
                            summary, passed)


# ---------------------------------------------------------------------------
# fixed host graph: embedding-composed bound chain
# ---------------------------------------------------------------------------


def _trial_fixed_h(payload, idx):
    cfg, host, dist_h = payload
    n = cfg.n[idx // cfg.trials]
    d = host.d
    rng = trial_rng(cfg.master_seed, idx)
    g, resamples = _sample_connected_regular(n, d, rng)
    spec = spectral.eigenvalues(spectral.normalized_laplacian(g))
    lam1 = spec.lambda1
    emb = bourgain_embed(dist_h, rng)
    dist_rep = distortion(dist_h, emb)
    strat = SearchStrategy(restarts=cfg.restarts, samples=cfg.samples,
                           move_budget=cfg.move_budget)
    res = gamma_sup_estimate(g, dist_h, strat, rng)
    gam = res.report.gamma
    chain_bound = (dist_rep.max_expansion * dist_rep.max_contraction) ** 2 / lam1
    values = {
        "gamma": gam,
        "lambda1": lam1,
        "expansion": dist_rep.max_expansion,
        "contraction": dist_rep.max_contraction,
        "chain_bound": chain_bound,
        "gamma_vec": None,
        "collapsed_pairs": dist_rep.collapsed_pairs,
        "degenerate_samples": res.degenerate_samples,
        "resamples": resamples,
        "lower_bound_ok": None if gam is None else gam >= 0.25 - _EPS_GAMMA,
        "trace_monotone_ok": _climbs_monotone(res),
        "chain_ok": None,
        "chain_embed_ok": None,
        "chain_hilbert_ok": None,
    }
    if gam is not None:
        vec_rep = gamma_vector(g, compose_map(res.best_map, emb))
        gvec = vec_rep.gamma
        values["gamma_vec"] = gvec
        factor = (dist_rep.max_expansion * dist_rep.max_contraction) ** 2
        values["chain_ok"] = gam <= chain_bound * (1 + _EPS_CHAIN) + _EPS_CHAIN
        values["chain_embed_ok"] = (gvec is None or
                                    gam <= factor * gvec * (1 + _EPS_CHAIN) + _EPS_CHAIN)
        values["chain_hilbert_ok"] = (gvec is None or
                                      gvec <= 1.0 / lam1 + _EPS_CHAIN)
    return TrialRecord(idx, seed_label(cfg.master_seed, idx), n, host.n, d, values)


_FIXED_H_COLUMNS = BASE_COLUMNS + [
    "gamma", "lambda1", "expansion", "contraction", "chain_bound", "gamma_vec",
    "collapsed_pairs", "degenerate_samples", "resamples",
    "lower_bound_ok", "trace_monotone_ok", "chain_ok", "chain_embed_ok",
    "chain_hilbert_ok"]


def run_fixed_h_experiment(cfg: ExperimentConfig, host=None) -> ExperimentResult:
    """Per sampled G: embed the fixed host, measure the distortion, and check
    gamma <= (expansion*contraction)^2 * gamma_vec <= (expansion*contraction)^2
    / lambda1 link by link with the measured constants."""
    if host is None:
        host = _load_host(cfg)
    if host is None:
        host = graphs.petersen_graph()
    if host.d is None:
        raise ConfigError("fixed-h host must be regular")
    if not metric.is_connected(host):
        raise ConfigError("fixed-h host must be connected")
    if any(d != host.d for d in cfg.d):
        raise ConfigError(f"G must match the host degree d={host.d}")
    dist_h = metric.all_pairs_distances(host)
    records = run_indexed(_trial_fixed_h, (cfg, host, dist_h),
                          len(cfg.n) * cfg.trials, cfg.workers)
    summary = {}
    for ci, n in enumerate(cfg.n):
        gams = _gamma_stats(records[ci * cfg.trials:(ci + 1) * cfg.trials])
        if gams:
            summary[f"max_gamma[n={n}]"] = max(gams)
    passed = all(rec.flags_ok() for rec in records)
    return ExperimentResult("fixed-h", _FIXED_H_COLUMNS, records, summary, passed)


# ---------------------------------------------------------------------------
# concentration of e_G(S_i, S_j) under the configuration model
# ---------------------------------------------------------------------------


def _cross_count(edges, s_mask, t_mask):
    if edges.size == 0:
        return 0
    eu, ev = edges[:, 0], edges[:, 1]
    return int(np.count_nonzero((s_mask[eu] & t_mask[ev]) | (t_mask[eu] & s_mask[ev])))


def _trial_concentration(payload, idx):
    cfg, n, d, si, sj = payload
    rng = trial_rng(cfg.master_seed, idx)
    mg = graphs.sample_configuration(n, d, rng)
    s_mask = np.zeros(n, dtype=bool)
    t_mask = np.zeros(n, dtype=bool)
    s_mask[:si] = True
    t_mask[si:si + sj] = True
    x = _cross_count(mg.edges, s_mask, t_mask)
    return TrialRecord(idx, seed_label(cfg.master_seed, idx), n, 0, d, {"x": x})


_CONC_COLUMNS = BASE_COLUMNS + ["x"]


def run_concentration_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Draws of X = e_G(S_i, S_j) on configuration multigraphs, the empirical
    tail against 2*exp(-lambda^2/(d n c^2)) with c=2, and the switching
    Lipschitz check |X(G) - X(G')| <= 2 on random valid switches."""
    n, d = cfg.n[0], cfg.d[0]
    si = cfg.si if cfg.si is not None else n // 2
    sj = cfg.sj if cfg.sj is not None else n - n // 2
    if si < 1 or sj < 1 or si + sj > n:
        raise ConfigError("set sizes must be positive with si + sj <= n")
    records = run_indexed(_trial_concentration, (cfg, n, d, si, sj),
                          cfg.trials, cfg.workers)
    xs = np.array([rec.values["x"] for rec in records], dtype=np.float64)
    expected = d * si * sj / n
    sem = float(xs.std(ddof=1) / math.sqrt(len(xs))) if len(xs) > 1 else 0.0
    mean_ok = abs(float(xs.mean()) - expected) <= 3.0 * sem + 1e-9

    c = 2.0
    step = math.ceil(math.sqrt(d * n))
    summary = {"mean_x": float(xs.mean()), "expected_x": expected,
               "sem_x": sem, "mean_ok": mean_ok}
    tails_ok = True
    for k in range(1, cfg.lambda_grid + 1):
        lam = k * step
        empirical = float(np.mean(np.abs(xs - expected) >= lam))
        bound = 2.0 * math.exp(-lam * lam / (d * n * c * c))
        ok = empirical <= bound + cfg.tail_slack
        tails_ok = tails_ok and ok
        summary[f"tail_emp[lam={lam}]"] = empirical
        summary[f"tail_bound[lam={lam}]"] = bound

    # switching Lipschitz constant, on an evolving simple sample
    rng = trial_rng(cfg.master_seed, AUX_STREAM)
    g, _ = graphs.sample_simple_regular(n, d, rng)
    s_mask = np.zeros(n, dtype=bool)
    t_mask = np.zeros(n, dtype=bool)
    s_mask[:si] = True
    t_mask[si:si + sj] = True
    s_set = np.flatnonzero(s_mask)
    t_set = np.flatnonzero(t_mask)
    x_cur = graphs.edges_between(g, s_set, t_set)
    max_step = 0
    accepted = 0
    attempts = 0
    attempt_cap = 10 * cfg.switchings + 100
    while accepted < cfg.switchings and attempts < attempt_cap:
        attempts += 1
        e = g.edges
        i, j = rng.integers(0, len(e), size=2)
        if i == j:
            continue
        try:
            g2 = graphs.switch_edges(g, e[i], e[j], pairing=int(rng.integers(0, 2)))
        except graphs.SwitchRejected:
            continue
        x_new = graphs.edges_between(g2, s_set, t_set)
        max_step = max(max_step, abs(x_new - x_cur))
        g, x_cur = g2, x_new
        accepted += 1
    lipschitz_ok = accepted == cfg.switchings and max_step <= 2
    summary.update({"switchings": accepted, "switch_attempts": attempts,
                    "max_switch_step": max_step, "lipschitz_ok": lipschitz_ok,
                    "tails_ok": tails_ok})
    passed = mean_ok and tails_ok and lipschitz_ok
    return ExperimentResult("concentration", _CONC_COLUMNS, records, summary, passed)


# ---------------------------------------------------------------------------
# error-bound experiment: e_G(S_i, S_j) vs d s_i s_j / n for heavy pairs
# ---------------------------------------------------------------------------


def _trial_errorbound(payload, idx):
    cfg, combos = payload
    n, d = combos[idx // cfg.trials]
    m = cfg.m[0]
    rng = trial_rng(cfg.master_seed, idx)
    g, _ = graphs.sample_simple_regular(n, d, rng)
    f = _family_map(cfg, n, m)
    sizes = np.bincount(f.values, minlength=m).astype(np.int64)
    e = g.edges
    cross = np.zeros((m, m), dtype=np.int64)
    np.add.at(cross, (f.values[e[:, 0]], f.values[e[:, 1]]), 1)
    cross = cross + cross.T
    qualify = np.outer(sizes, sizes) >= cfg.c * n ** (2 - cfg.epsilon)
    iu, ju = np.triu_indices(m, k=1)
    q = qualify[iu, ju]
    dev = np.abs(cross[iu, ju] - d * sizes[iu] * sizes[ju] / n)
    ok = dev <= d * n ** (1 - cfg.epsilon / 2)
    qualifying = int(q.sum())
    within = int((q & ok).sum())
    values = {
        "qualifying_pairs": qualifying,
        "within_pairs": within,
        "vacuous": qualifying == 0,
        "max_rel_dev": float((dev[q] / (d * sizes[iu][q] * sizes[ju][q] / n)).max())
        if qualifying else None,
    }
    return TrialRecord(idx, seed_label(cfg.master_seed, idx), n, m, d, values)


_ERR_COLUMNS = BASE_COLUMNS + ["qualifying_pairs", "within_pairs", "vacuous",
                               "max_rel_dev"]


def run_errorbound_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Fraction of qualifying pairs (s_i s_j >= c n^{2-eps}) whose edge count
    stays within d n^{1-eps/2} of d s_i s_j / n; asserted >= 99% at n >= 1000."""
    combos = [(n, d) for d in cfg.d for n in cfg.n]
    records = run_indexed(_trial_errorbound, (cfg, combos),
                          len(combos) * cfg.trials, cfg.workers)
    summary = {}
    passed = True
    for ci, (n, d) in enumerate(combos):
        chunk = records[ci * cfg.trials:(ci + 1) * cfg.trials]
        total = sum(rec.values["qualifying_pairs"] for rec in chunk)
        within = sum(rec.values["within_pairs"] for rec in chunk)
        frac = within / total if total else None
        summary[f"within_fraction[n={n},d={d}]"] = frac
        summary[f"vacuous[n={n},d={d}]"] = total == 0
        if n >= 1000 and total:
            ok = frac >= 1.0 - 1e-2
            summary[f"fraction_ok[n={n},d={d}]"] = ok
            passed = passed and ok
    return ExperimentResult("errorbound", _ERR_COLUMNS, records, summary, passed)


# ---------------------------------------------------------------------------
# diameter sandwich
# ---------------------------------------------------------------------------


def _trial_diameter(payload, idx):
    cfg, combos = payload
    n, d = combos[idx // cfg.trials]
    rng = trial_rng(cfg.master_seed, idx)
    g, _ = graphs.sample_simple_regular(n, d, rng)
    values = {
        "connected": False, "diameter": None, "log_d_n": math.log(n, d),
        "lambda1": None, "lambda_bar": None, "bound_two_sided": None,
        "bound_lambda1": None, "ratio": None, "lower_ok": None, "upper_ok": None,
        "envelope_hit": None, "residual": None,
    }
    if metric.is_connected(g):
        diam = metric.diameter(g)
        spec = spectral.eigenvalues(spectral.normalized_laplacian(g))
        lam_bar = spectral.lambda_bar(spec)
        bound2 = spectral.spectral_diameter_bound(spec, n)
        bound1 = spectral.spectral_diameter_bound(spec, n, variant="lambda1")
        lower = math.log(n, d - 1) - 2.0 / d if d > 2 else None
        values.update({
            "connected": True,
            "diameter": diam,
            "lambda1": spec.lambda1,
            "lambda_bar": lam_bar,
            "bound_two_sided": bound2,
            "bound_lambda1": bound1,
            "ratio": diam / math.log(n, d),
            "residual": spec.residual,
            "lower_ok": None if lower is None else diam >= lower,
            "upper_ok": True if bound2 is None else diam <= bound2,
            "envelope_hit": spec.lambda1 >= 1.0 - cfg.eigen_c / math.sqrt(d),
        })
    return TrialRecord(idx, seed_label(cfg.master_seed, idx), n, 0, d, values)


_DIAM_COLUMNS = BASE_COLUMNS + [
    "connected", "diameter", "log_d_n", "lambda1", "lambda_bar",
    "bound_two_sided", "bound_lambda1", "ratio", "residual",
    "lower_ok", "upper_ok", "envelope_hit"]


def run_diameter_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Checks log_{d-1}(n) - 2/d <= diam <= spectral bound on every connected
    sample and tallies the lambda1 >= 1 - C/sqrt(d) envelope."""
    combos = [(n, d) for d in cfg.d for n in cfg.n]
    for n, d in combos:
        if d > math.sqrt(n) / 2:
            raise ConfigError(f"diameter experiment needs d <= sqrt(n)/2 (n={n}, d={d})")
    records = run_indexed(_trial_diameter, (cfg, combos),
                          len(combos) * cfg.trials, cfg.workers)
    connected = [rec for rec in records if rec.values["connected"]]
    hits = [rec.values["envelope_hit"] for rec in connected]
    envelope_fraction = float(np.mean(hits)) if hits else 1.0
    summary = {"connected_trials": len(connected),
               "disconnected_trials": len(records) - len(connected),
               "envelope_fraction": envelope_fraction}
    for ci, (n, d) in enumerate(combos):
        chunk = [rec for rec in records[ci * cfg.trials:(ci + 1) * cfg.trials]
                 if rec.values["connected"]]
        if chunk:
            summary[f"mean_ratio[n={n},d={d}]"] = float(
                np.mean([rec.values["ratio"] for rec in chunk]))
    sandwich = all(rec.flags_ok() for rec in records)
    passed = sandwich and envelope_fraction >= 0.99
    summary["sandwich_ok"] = sandwich
    return ExperimentResult("diameter", _DIAM_COLUMNS, records, summary, passed)


_RUNNERS = {
    "typical": run_typical_experiment,
    "growing-d": run_growing_d_experiment,
    "fixed-function": run_fixed_function_experiment,
    "fixed-h": run_fixed_h_experiment,
    "concentration": run_concentration_experiment,
    "errorbound": run_errorbound_experiment,
    "diameter": run_diameter_experiment,
}


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    cfg.validate()
    return _RUNNERS[cfg.experiment](cfg)
