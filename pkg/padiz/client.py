import datetime
import itertools
import time
from dataclasses import dataclass
from typing import List, Tuple

from sortedcontainers import SortedDict

from padiz.cli import ExperimentConfig, parse_padic_literal
from padiz.conventions import PADIZ_CONVENTIONS_ARGS, PadizConventions
from padiz.errors import InadmissibleWord, OutOfRegime, PadizError, PrecisionExhausted, SingularInput
from padiz.gibbs_measures import (BoundaryFunction, CayleyTree, check_compatibility, compatibility_feasible,
                                  cycle_to_measure, hgm_lower_bound, partition_count, ti_residual_ord, ti_solve)
from padiz.padic_core import PadicNumber, coerce, difference_ord, from_rational, translate
from padiz.padic_functions import exp_p, ln_p
from padiz.padic_poly import REGIME_ONE_MOD_THREE, REGIME_THREE, REGIME_TWO
from padiz.potts_bethe import PottsBetheMap, Undecided
from padiz.samplers import default_rng, random_in_ball, sample_points
from padiz.symbolic_dynamics import (IncidenceMatrix, Itinerary, MarkovPartition, a_m_template, build_markov_partition,
                                     check_block_code_bijection, count_periodic_points, df_exponent, distinct_count,
                                     escape_decomposition, full_shift_matrix, incidence_from_dynamics, is_admissible,
                                     periodic_point_from_word)
from padiz.utilities import dumps, tag_examples

# PADIZ
# -----
# Runs the named experiments against the Potts-Bethe map and its Gibbs measures, and assembles
# deterministic JSON reports. Every experiment logs confirms, warnings and errors as it goes.

TRACE_HORIZON = 8


@dataclass
class Report:
    document: dict
    exit_code: int

    def to_json(self) -> str:
        return dumps(self.document)


class Padiz(PadizConventions):

    def __init__(self, **kwargs):
        conventions_kwargs = dict([(k, v) for k, v in kwargs.items() if k in PADIZ_CONVENTIONS_ARGS])
        super().__init__(**conventions_kwargs)
        self.logs = {self.CONFIRMS: [], self.WARNINGS: [], self.ERRORS: []}
        self._undecided = False
        self._timing = False

    # --------------------------------------------------------------------------
    #            Public interface
    # --------------------------------------------------------------------------

    def run_experiment(self, config: ExperimentConfig) -> Report:
        """ Dispatch to the named experiment and wrap its results in a report """
        self.logs = {self.CONFIRMS: [], self.WARNINGS: [], self.ERRORS: []}
        self._undecided = False
        self._timing = bool(config.timing)
        self.PRECISION = int(config.precision or self.PRECISION)
        self.MAX_ITER = int(config.max_iter or self.MAX_ITER)
        self.SEED = int(config.seed or self.SEED)
        self.SAMPLES = int(config.samples or self.SAMPLES)
        implementation = getattr(self, '_' + config.experiment.replace('-', '_') + '_implementation')
        start = time.time()
        regime = None
        try:
            results, regime = implementation(config)
        except PadizError as e:
            results = None
            self._error(operation=config.experiment, error=type(e).__name__, message=str(e))
        document = {'schema_version': self.SCHEMA_VERSION,
                    'experiment': config.experiment,
                    'inputs': config.echo(),
                    'regime': regime,
                    'results': results,
                    'confirms': self.logs[self.CONFIRMS],
                    'warnings': self.logs[self.WARNINGS],
                    'errors': self.logs[self.ERRORS]}
        if self._timing:
            document['timing'] = {'seconds': time.time() - start}
        if self.logs[self.ERRORS]:
            exit_code = self.EXIT_ERROR
        elif self._undecided:
            exit_code = self.EXIT_UNDECIDED
        else:
            exit_code = self.EXIT_OK
        document['exit_code'] = exit_code
        return Report(document=document, exit_code=exit_code)

    def get_confirms(self):
        return list(self.logs[self.CONFIRMS])

    def get_warnings(self):
        return list(self.logs[self.WARNINGS])

    def get_errors(self):
        return list(self.logs[self.ERRORS])

    # --------------------------------------------------------------------------
    #            Implementation  (logging)
    # --------------------------------------------------------------------------

    def _log_to_list(self, log_name, limit, data=None, **kwargs):
        """ Prepend to list style log, newest first """
        log_entry = {'time': str(datetime.datetime.now()), 'epoch_time': time.time()} if self._timing else {}
        if data:
            log_entry.update(data)
        log_entry.update(**kwargs)
        entries = self.logs[log_name]
        entries.insert(0, log_entry)
        del entries[limit:]

    def _confirm(self, data=None, **kwargs):
        self._log_to_list(log_name=self.CONFIRMS, limit=self.CONFIRMS_LIMIT, data=data, **kwargs)

    def _error(self, data=None, **kwargs):
        self._log_to_list(log_name=self.ERRORS, limit=self.ERROR_LIMIT, data=data, **kwargs)

    def _warn(self, data=None, **kwargs):
        self._log_to_list(log_name=self.WARNINGS, limit=self.WARNINGS_LIMIT, data=data, **kwargs)

    # --------------------------------------------------------------------------
    #            Implementation  (inputs)
    # --------------------------------------------------------------------------

    def _potts_bethe_map(self, config: ExperimentConfig) -> PottsBetheMap:
        q = config.q_value()
        if config.coupling is not None:
            m = PottsBetheMap.from_coupling(config.prime, config.coupling_value(), q, self.PRECISION)
        else:
            m = PottsBetheMap.from_rationals(config.prime, config.theta_value(), q, self.PRECISION)
        for warning in m.warnings:
            self._warn(data=warning)
        return m

    @staticmethod
    def _regime(m: PottsBetheMap) -> dict:
        return {'tag': m.regime_description(), 'inequality_chain': m.inequality_chain(),
                'ord_theta_minus_one': m.vt, 'ord_q': m.vq, 'm': m.m_level}

    def _theta_and_coupling(self, config: ExperimentConfig) -> Tuple[PadicNumber, PadicNumber]:
        """ θ = exp_p(J) when a coupling is given, otherwise J = ln_p(θ) """
        if config.coupling is not None:
            J = parse_padic_literal(config.coupling, config.prime, self.PRECISION)
            return exp_p(J).with_precision(self.PRECISION), J
        theta = parse_padic_literal(config.theta, config.prime, self.PRECISION)
        return theta, ln_p(theta)

    def _points(self, config: ExperimentConfig, m: PottsBetheMap) -> List[PadicNumber]:
        if config.points:
            return [parse_padic_literal(text, config.prime, self.PRECISION) for text in config.points]
        return sample_points(default_rng(self.SEED), m, self.SAMPLES)

    def _markov(self, m: PottsBetheMap) -> Tuple[MarkovPartition, IncidenceMatrix]:
        part = build_markov_partition(m)
        return part, incidence_from_dynamics(part, m)

    def _periodic_orbits(self, m: PottsBetheMap, part: MarkovPartition, incidence: IncidenceMatrix,
                         n: int) -> List[Tuple[Tuple[int, ...], PadicNumber]]:
        """ (word, point) for every cyclically admissible word of length n """
        orbits = []
        for word in itertools.product(part.symbols, repeat=n):
            if is_admissible(word, incidence, cyclic=True):
                orbits.append((word, periodic_point_from_word(m, part, word, incidence, self.RESIDUAL_MARGIN)))
        return orbits

    # --------------------------------------------------------------------------
    #            Implementation  (dynamics experiments)
    # --------------------------------------------------------------------------

    def _fixed_points_implementation(self, config: ExperimentConfig):
        m = self._potts_bethe_map(config)
        threshold = self.PRECISION - self.FIXED_POINT_MARGIN
        infos = m.fixed_points()
        for info in infos:
            if info.residual_ord < threshold:
                self._error(operation='fixed_points', label=info.label, residual_ord=info.residual_ord,
                            threshold=threshold)
            else:
                self._confirm(operation='fixed_points', label=info.label, residual_ord=info.residual_ord)
        results = {'count': len(infos),
                   'classes': [info.classification for info in infos],
                   'fixed_points': infos,
                   'cubic_certificate': m.cubic.certificate,
                   'separation_verified': m.separation_verified}
        return results, self._regime(m)

    def _classify_implementation(self, config: ExperimentConfig):
        m = self._potts_bethe_map(config)
        tally = SortedDict()
        regions = []
        for x in self._points(config, m):
            try:
                region = m.classify_region(x)
                tag = region.tag
                regions.append({'point': x, 'tag': tag, 'd_one': region.d_one, 'd_inf': region.d_inf})
            except PrecisionExhausted:
                tag = 'UNDECIDED'
                self._undecided = True
                regions.append({'point': x, 'tag': tag})
            tally[tag] = tally.get(tag, 0) + 1
        self._confirm(operation='classify', points=len(regions))
        if not config.points:
            regions = tag_examples(regions, lambda e: e['tag'], self.REPORT_EXAMPLES)
        return {'tally': dict(tally), 'regions': regions}, self._regime(m)

    def _orbit_implementation(self, config: ExperimentConfig):
        m = self._potts_bethe_map(config)
        partition = None
        if m.prime_regime == REGIME_ONE_MOD_THREE:
            partition = build_markov_partition(m).labelled_balls()
        tally = SortedDict()
        orbits = []
        for x in self._points(config, m):
            outcome = m.basin_decide(x, self.MAX_ITER, partition)
            entry = {'point': x, 'outcome': outcome}
            if m.prime_regime in (REGIME_TWO, REGIME_THREE):
                try:
                    entry['escape_time'] = m.escape_time(x, self.MAX_ITER)
                except (PrecisionExhausted, SingularInput):
                    entry['escape_time'] = None
            if isinstance(outcome, Undecided):
                self._undecided = True
            tally[outcome.kind] = tally.get(outcome.kind, 0) + 1
            orbits.append(entry)
        if not config.points:
            orbits = tag_examples(orbits, lambda e: e['outcome'].kind, self.REPORT_EXAMPLES)
        return {'tally': dict(tally), 'orbits': orbits}, self._regime(m)

    def _julia_partition_implementation(self, config: ExperimentConfig):
        m = self._potts_bethe_map(config)
        part = build_markov_partition(m)
        rng = default_rng(self.SEED)
        pairs = max(1, self.SAMPLES // part.size)
        balls = []
        for label, ball, tau in zip(part.labels, part.balls, part.tau):
            mismatches = 0
            for _ in range(pairs):
                x, y = random_in_ball(rng, ball, self.PRECISION), random_in_ball(rng, ball, self.PRECISION)
                o, exact = difference_ord(x, y)
                if not exact:
                    continue
                image_ord = difference_ord(m.eval_map(x), m.eval_map(y))[0]
                if image_ord != o - tau:
                    mismatches += 1
            if mismatches:
                self._error(operation='julia_partition', ball=label, scaling_mismatches=mismatches)
            balls.append({'label': label, 'center': ball.center, 'radius_exp': ball.closed_radius_exp,
                          'tau': tau, 'scaling_pairs': pairs, 'scaling_mismatches': mismatches})
        results = {'m': part.m_level, 'balls': balls, 'level_counts': part.level_counts,
                   'weak_repeller': part.is_weak_repeller()}
        if part.size > 3:
            sample = sample_points(default_rng(self.SEED + 1), m, self.SAMPLES)
            results['escape'] = escape_decomposition(m, part, sample, self.MAX_PERIOD)
        return results, self._regime(m)

    def _incidence_implementation(self, config: ExperimentConfig):
        m = self._potts_bethe_map(config)
        part, incidence = self._markov(m)
        template = full_shift_matrix() if m.m_level == 0 else a_m_template(m.m_level, m.vq, m.vt)
        matches = incidence == template
        traces = {n: count_periodic_points(incidence, n) for n in range(1, TRACE_HORIZON + 1)}
        full_shift = all(traces[n] == 3 ** n for n in traces)
        if not matches:
            self._error(operation='incidence', message='Dynamical incidence matrix differs from the template')
        if not full_shift:
            self._error(operation='incidence', message='trace(A^n) differs from 3^n')
        results = {'labels': part.labels, 'matrix': incidence.to_list(), 'template_matches': matches,
                   'irreducible': incidence.is_irreducible(), 'traces': traces}
        return results, self._regime(m)

    def _periodic_implementation(self, config: ExperimentConfig):
        m = self._potts_bethe_map(config)
        part, incidence = self._markov(m)
        horizon = int(config.period or self.MAX_PERIOD)
        counts = []
        for n in range(1, horizon + 1):
            orbits = self._periodic_orbits(m, part, incidence, n)
            distinct = distinct_count([x for _, x in orbits], self.PRECISION - self.RESIDUAL_MARGIN)
            trace = count_periodic_points(incidence, n)
            if distinct != trace:
                self._error(operation='periodic', n=n, distinct=distinct, trace=trace)
            counts.append({'n': n, 'words': len(orbits), 'distinct': distinct, 'trace': trace})
        self._confirm(operation='periodic', horizon=horizon)
        return {'counts': counts}, self._regime(m)

    def _conjugacy_implementation(self, config: ExperimentConfig):
        m = self._potts_bethe_map(config)
        part, incidence = self._markov(m)
        horizon = int(config.period or TRACE_HORIZON)
        results = {'m': m.m_level}
        if m.m_level > 0:
            checks = [dict(check_block_code_bijection(m.m_level, n), n=n) for n in range(1, horizon + 1)]
            if not all(c['bijective'] for c in checks):
                self._error(operation='conjugacy', message='Block code is not a bijection on periodic words')
            results['block_code'] = checks
        orbits = self._periodic_orbits(m, part, incidence, 2)
        isometric, compared = 0, 0
        for (u, x), (v, y) in itertools.combinations(orbits, 2):
            o, exact = difference_ord(x, y)
            if not exact:
                continue
            compared += 1
            if o == df_exponent(part, Itinerary(u * 2), Itinerary(v * 2)):
                isometric += 1
        if isometric != compared:
            self._error(operation='conjugacy', message='|x - y| differs from d_f on %d pairs' % (compared - isometric))
        results['isometry'] = {'pairs': compared, 'isometric': isometric}
        return results, self._regime(m)

    def _small_prime_implementation(self, config: ExperimentConfig):
        m = self._potts_bethe_map(config)
        if m.prime_regime not in (REGIME_TWO, REGIME_THREE):
            raise OutOfRegime('small-prime runs for p = 2 or p = 3')
        x1 = m.fixed_point('x1')
        rng = default_rng(self.SEED)
        points = [x for x in sample_points(rng, m, self.SAMPLES) if x1 is None or difference_ord(x, x1)[1]]
        tally = SortedDict()
        for x in points:
            outcome = m.basin_decide(x, self.MAX_ITER, partition=[])
            tally[outcome.kind] = tally.get(outcome.kind, 0) + 1
        roots = m.cubic.count
        converged = tally.get('Converges', 0) == len(points)
        if not converged:
            self._warn(operation='small_prime', message='Not every sampled orbit converged', tally=dict(tally))
        summary = ('no non-trivial fixed points' if roots == 0 else '%d non-trivial fixed point(s)' % roots)
        summary += '; sampled orbits converge' if converged else '; some sampled orbits did not converge'
        results = {'summary': summary, 'roots': roots, 'certificate': m.cubic.certificate,
                   'fixed_points': m.fixed_points(), 'tally': dict(tally)}
        balls = m.scaling_balls()
        if balls:
            results['a1_inf_2_scaling'] = {'radius_exp': balls[0][1].closed_radius_exp, 'tau': balls[0][2]}
        return results, self._regime(m)

    # --------------------------------------------------------------------------
    #            Implementation  (Gibbs experiments)
    # --------------------------------------------------------------------------

    def _ti_solve_implementation(self, config: ExperimentConfig):
        theta, _ = self._theta_and_coupling(config)
        solutions = ti_solve(config.form, config.q_states, theta, config.sizes)
        described = []
        for z in solutions:
            residual, verified = ti_residual_ord(z, theta)
            described.append({'z': z, 'residual_ord': residual, 'verified': verified, 'd': partition_count(z)})
        if not solutions:
            self._warn(operation='ti_solve', form=config.form, message='No solution in E_p')
        self._confirm(operation='ti_solve', form=config.form, solutions=len(solutions))
        return {'form': config.form.upper(), 'sizes': config.sizes, 'solutions': described}, None

    def _compat(self, h: BoundaryFunction, J: PadicNumber, n: int, label: str):
        report = check_compatibility(CayleyTree(3, n), h, J, n, precision=self.PRECISION,
                                     margin=self.COMPAT_MARGIN, guard=self.COMPAT_GUARD)
        entry = {'boundary': label, 'n': n, 'min_residual': report.min_residual, 'threshold': report.threshold,
                 'passed': report.passed}
        (self._confirm if report.passed else self._warn)(operation='gibbs_compat', **entry)
        return entry

    def _gibbs_compat_implementation(self, config: ExperimentConfig):
        theta, J = self._theta_and_coupling(config)
        form = (config.form or 'A').upper()
        solutions = ti_solve(form, config.q_states, theta, config.sizes)
        if not solutions:
            raise OutOfRegime('Form %s has no solution for these parameters' % form)
        h = BoundaryFunction.translation_invariant(solutions[0])
        n = int(config.period or 1)
        checks = [self._compat(h, J, n, 'form ' + form)]
        shift = from_rational(config.prime, 1, config.prime, self.PRECISION)
        perturbed = BoundaryFunction(((translate(h.vectors[0][0], shift),) + tuple(h.vectors[0][1:]),), h.prime)
        checks.append(self._compat(perturbed, J, n, 'perturbed'))
        if not checks[0]['passed']:
            self._error(operation='gibbs_compat', message='Compatibility fails for a solution of the recursion')
        return {'form': form, 'checks': checks}, None

    def _hm_construct_implementation(self, config: ExperimentConfig):
        theta, J = self._theta_and_coupling(config)
        p, q_states, alpha = config.prime, config.q_states, config.alpha_size
        period = int(config.period or 2)

        coupling = config.coupling_value()

        def source(n):
            if coupling is not None:
                return exp_p(coerce(coupling, p, n)).with_precision(n), coerce(q_states, p, n)
            return coerce(config.theta_value(), p, n), coerce(q_states, p, n)

        reduced = PottsBetheMap.reduced(theta, coerce(q_states, p, self.PRECISION), alpha, parameter_source=source)
        part, incidence = self._markov(reduced)
        word = tuple(config.word) or self._primitive_word(part, incidence, period)
        x = periodic_point_from_word(reduced, part, word, incidence, self.RESIDUAL_MARGIN)
        cycle = [x]
        for _ in range(len(word) - 1):
            cycle.append(reduced.eval_map(cycle[-1]))
        h = cycle_to_measure(cycle, alpha, q_states, theta)
        self._confirm(operation='hm_construct', word=list(word), period=len(word))
        results = {'word': list(word), 'cycle': cycle, 'boundary': h.vectors,
                   'lower_bound': hgm_lower_bound(len(word), q_states, p)}
        if compatibility_feasible(q_states, 3, 1, self.COMPAT_GUARD):
            results['compatibility'] = self._compat(h, J, 1, 'periodic')
        return results, self._regime(reduced)

    @staticmethod
    def _primitive_word(part: MarkovPartition, incidence: IncidenceMatrix, period: int) -> Tuple[int, ...]:
        """ First cyclically admissible word whose least period is the requested one """
        for word in itertools.product(part.symbols, repeat=period):
            if not is_admissible(word, incidence, cyclic=True):
                continue
            if all(word != word[d:] + word[:d] for d in range(1, period) if period % d == 0):
                return word
        raise InadmissibleWord('No admissible word of least period %d' % period)

    def _count_bound_implementation(self, config: ExperimentConfig):
        bound = hgm_lower_bound(config.period, config.q_states, config.prime)
        self._confirm(operation='count_bound', bound=bound)
        return {'bound': bound, 'm': config.period, 'q_states': config.q_states, 'prime': config.prime}, None
