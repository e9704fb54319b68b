
# python -m pytest tests/test_cli.py

from fractions import Fraction

import pytest

from padiz.cli import ExperimentConfig, build_config, load_config_file, parse_padic_literal, parse_rational_literal
from padiz.conventions import PRECISION_ENV
from padiz.errors import ConfigError, ParseError


def test_literals():
    assert parse_rational_literal('1+7^3', 7) == 344
    assert parse_rational_literal('1 + p^2', 7) == 50
    assert parse_rational_literal('3/2', 7) == Fraction(3, 2)
    assert parse_rational_literal('-(2*3)', 7) == -6
    assert parse_rational_literal('2^-1', 7) == Fraction(1, 2)
    assert parse_rational_literal('(1+2)/(3*4)', 7) == Fraction(1, 4)


def test_padic_literals():
    assert parse_padic_literal('49', 7).valuation == 2
    assert parse_padic_literal('0', 7).is_zero
    x = parse_padic_literal('1/7', 7, 10)
    assert x.valuation == -1 and x.precision == 10


def test_bad_literals():
    for text in ('7/0', '1/2/3', '1/2*3', '2^3^2', '', '1+', '(1', 'x', '0^-1'):
        with pytest.raises(ParseError):
            parse_rational_literal(text, 7)


def test_parse_error_position():
    with pytest.raises(ParseError) as e:
        parse_rational_literal('1 + y', 7)
    assert e.value.position == 4


def test_config_file(tmp_path):
    path = tmp_path / 'run.cfg'
    path.write_text('# fixed points of the full shift instance\nprime = 7\ntheta = 1+7^3\nq = 7  # a comment\n'
                    'max-iter = 20\n')
    values = load_config_file(str(path))
    assert values == {'prime': '7', 'theta': '1+7^3', 'q': '7', 'max_iter': '20'}
    config = build_config(flags={'experiment': 'fixed-points', 'q': '49', 'seed': None}, file_values=values)
    assert config.prime == 7 and config.max_iter == 20
    assert config.q == '49'
    assert config.q_value() == 49


def test_config_file_errors(tmp_path):
    path = tmp_path / 'bad.cfg'
    path.write_text('prime = 7\nnonsense\ncolour = blue\n')
    with pytest.raises(ConfigError) as e:
        load_config_file(str(path))
    assert set(e.value.diagnostics) == {'line 2', 'colour'}


def test_validation():
    with pytest.raises(ConfigError) as e:
        build_config(flags={'experiment': 'fixed-points', 'prime': 4, 'theta': '1', 'q': '7'})
    assert 'prime' in e.value.diagnostics
    with pytest.raises(ConfigError) as e:
        build_config(flags={'experiment': 'ti-solve', 'prime': 7, 'theta': '1+7^2', 'q_states': 7})
    assert e.value.diagnostics == {'form': 'required by ti-solve'}
    with pytest.raises(ConfigError) as e:
        build_config(flags={'experiment': 'orbit', 'prime': 7, 'theta': '1+', 'q': '7'})
    assert 'theta' in e.value.diagnostics
    with pytest.raises(ConfigError):
        build_config(flags={'experiment': 'nothing'})


def test_conversions():
    config = build_config(flags={'experiment': 'ti-solve', 'prime': 7, 'theta': '1+7^2', 'q_states': 7,
                                 'form': 'C', 'sizes': '3,3', 'points': '1, 2'})
    assert config.sizes == [3, 3]
    assert config.points == ['1', '2']
    assert config.q_value() == 7
    assert 'out' not in config.echo()


def test_coupling_replaces_theta():
    config = build_config(flags={'experiment': 'gibbs-compat', 'prime': 7, 'coupling': '7', 'q_states': 7})
    assert config.coupling_value() == 7
    assert ExperimentConfig(prime=7, theta='1+p^3').theta_value() == 344


def test_precision_default(monkeypatch):
    monkeypatch.setenv(PRECISION_ENV, '30')
    config = build_config(flags={'experiment': 'count-bound', 'prime': 7, 'q_states': 7, 'period': 1})
    assert config.precision == 30
