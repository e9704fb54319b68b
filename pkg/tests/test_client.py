
# python -m pytest tests/test_client.py

import json

import numpy as np
import pytest

from padiz import Padiz
from padiz.__main__ import main
from padiz.cli import build_config
from padiz.errors import InadmissibleWord
from padiz.padiz_test_config import PADIZ_TEST_CONFIG, instance
from padiz.symbolic_dynamics import IncidenceMatrix, build_markov_partition, full_shift_matrix


def run(**flags):
    return Padiz(**PADIZ_TEST_CONFIG).run_experiment(build_config(flags=flags))


def test_count_bound():
    report = run(experiment='count-bound', prime=7, q_states=7, period=1)
    assert report.exit_code == 0
    assert report.document['results']['bound'] == 192
    assert json.loads(report.to_json())['results']['bound'] == 192


def test_fixed_points():
    report = run(experiment='fixed-points', prime=7, theta='1+7^3', q='7')
    assert report.exit_code == 0
    results = report.document['results']
    assert results['count'] == 4
    assert results['classes'] == ['attracting', 'repelling', 'repelling', 'repelling']
    assert report.document['regime']['m'] == 0


def test_classify_is_deterministic():
    flags = dict(experiment='classify', prime=7, theta='1+7^3', q='7', points='1,2,0')
    first, second = run(**flags), run(**flags)
    assert first.to_json() == second.to_json()
    assert first.document['results']['tally'] == {'A0': 1, 'A1': 2}


def test_sampled_classify_is_deterministic():
    flags = dict(experiment='classify', prime=7, theta='1+7^3', q='7', seed=3, samples=12)
    assert run(**flags).to_json() == run(**flags).to_json()


def test_sampled_reports_keep_examples_of_each_tag():
    flags = dict(experiment='classify', prime=7, theta='1+7^3', q='7', seed=3, samples=40)
    results = run(**flags).document['results']
    kept = [entry['tag'] for entry in results['regions']]
    assert set(kept) == set(results['tally'])
    for tag, count in results['tally'].items():
        assert kept.count(tag) == min(count, 2)


def test_primitive_word():
    part = build_markov_partition(instance('full_shift'))
    assert Padiz._primitive_word(part, full_shift_matrix(), 2) == (0, 1)
    fixed_only = IncidenceMatrix(np.eye(3, dtype=np.int64), part.labels)
    assert Padiz._primitive_word(part, fixed_only, 1) == (0,)
    with pytest.raises(InadmissibleWord):
        Padiz._primitive_word(part, fixed_only, 2)


def test_errors_are_reported():
    pdz = Padiz(**PADIZ_TEST_CONFIG)
    report = pdz.run_experiment(build_config(flags=dict(experiment='small-prime', prime=7, theta='1+7^3', q='7')))
    assert report.exit_code == 1
    assert pdz.get_errors()[0]['error'] == 'OutOfRegime'
    assert report.document['results'] is None


def test_small_prime():
    report = run(experiment='small-prime', prime=3, theta='10', q='3', samples=10, max_iter=10)
    assert report.document['results']['roots'] == 0
    assert report.document['results']['summary'].startswith('no non-trivial fixed points')


def test_ti_solve_report():
    report = run(experiment='ti-solve', prime=7, theta='1+7^2', q_states=7, form='C', sizes='3,3')
    assert report.exit_code == 0
    solutions = report.document['results']['solutions']
    assert solutions and all(s['verified'] and s['d'] == 2 for s in solutions)


def test_main_writes_report(tmp_path):
    out = tmp_path / 'report.json'
    code = main(['count-bound', '--prime', '7', '--q-states', '14', '--period', '1', '--out', str(out)])
    assert code == 0
    assert json.loads(out.read_text())['results']['bound'] == 19428


def test_main_exit_codes(tmp_path, capsys):
    assert main(['fixed-points', '--prime', '4', '--theta', '1', '--q', '7']) == 1
    assert 'not prime' in capsys.readouterr().err
    out = tmp_path / 'report.json'
    assert main(['small-prime', '--prime', '7', '--theta', '1+7^3', '--q', '7', '--out', str(out)]) == 1
    assert json.loads(out.read_text())['exit_code'] == 1
