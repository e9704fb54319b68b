from dataclasses import dataclass, field, fields
from fractions import Fraction
from typing import Dict, List, Optional

from padiz.conventions import default_precision
from padiz.errors import ConfigError, ParseError
from padiz.padic_core import PadicNumber, coerce, is_prime, zero

EXPERIMENTS = ('fixed-points', 'classify', 'orbit', 'julia-partition', 'incidence', 'periodic', 'conjugacy',
               'gibbs-compat', 'ti-solve', 'hm-construct', 'count-bound', 'small-prime')

# Fields each experiment cannot run without (theta may come from coupling instead)
REQUIRED = {'fixed-points': ('prime', 'theta', 'q'),
            'classify': ('prime', 'theta', 'q'),
            'orbit': ('prime', 'theta', 'q'),
            'julia-partition': ('prime', 'theta', 'q'),
            'incidence': ('prime', 'theta', 'q'),
            'periodic': ('prime', 'theta', 'q'),
            'conjugacy': ('prime', 'theta', 'q'),
            'gibbs-compat': ('prime', 'theta', 'q_states'),
            'ti-solve': ('prime', 'theta', 'q_states', 'form'),
            'hm-construct': ('prime', 'theta', 'q_states', 'alpha_size'),
            'count-bound': ('prime', 'q_states', 'period'),
            'small-prime': ('prime', 'theta', 'q')}


# --------------------------------------------------------------------------
#            Literals
# --------------------------------------------------------------------------
#   expr   := term (('+' | '-') term)*
#   term   := unary (('*' | '/') unary)*      nothing may follow a '/'
#   unary  := '-' unary | power
#   power  := atom ('^' ['-'] digits)?        no towers
#   atom   := digits | 'p' | '(' expr ')'


class _LiteralParser:

    def __init__(self, text: str, prime: int):
        self.text = text
        self.prime = prime
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ''

    def _expect(self, char: str):
        if self._peek() != char:
            raise ParseError('Expected ' + repr(char), self.pos)
        self.pos += 1

    def _digits(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError('Expected an integer', start)
        return int(self.text[start:self.pos])

    def parse(self) -> Fraction:
        if not self.text.strip():
            raise ParseError('Empty literal', 0)
        value = self.expr()
        if self._peek():
            raise ParseError('Unexpected ' + repr(self._peek()), self.pos)
        return value

    def expr(self) -> Fraction:
        value = self.term()
        while self._peek() in ('+', '-'):
            op = self.text[self.pos]
            self.pos += 1
            right = self.term()
            value = value + right if op == '+' else value - right
        return value

    def term(self) -> Fraction:
        value = self.unary()
        divided = False
        while self._peek() in ('*', '/'):
            op = self.text[self.pos]
            if divided:
                raise ParseError('Ambiguous chain after a division, add parentheses', self.pos)
            self.pos += 1
            right = self.unary()
            if op == '*':
                value = value * right
            else:
                if right == 0:
                    raise ParseError('Division by zero', self.pos)
                value = value / right
                divided = True
        return value

    def unary(self) -> Fraction:
        if self._peek() == '-':
            self.pos += 1
            return -self.unary()
        return self.power()

    def power(self) -> Fraction:
        base = self.atom()
        if self._peek() != '^':
            return base
        self.pos += 1
        negative = self._peek() == '-'
        if negative:
            self.pos += 1
        exponent = self._digits()
        if self._peek() == '^':
            raise ParseError('Ambiguous tower of exponents, add parentheses', self.pos)
        if base == 0 and negative:
            raise ParseError('Division by zero', self.pos)
        return base ** (-exponent if negative else exponent)

    def atom(self) -> Fraction:
        char = self._peek()
        if char == '(':
            self.pos += 1
            value = self.expr()
            self._expect(')')
            return value
        if char == 'p':
            self.pos += 1
            return Fraction(self.prime)
        if char.isdigit():
            return Fraction(self._digits())
        raise ParseError('Unexpected ' + (repr(char) if char else 'end of input'), self.pos)


def parse_rational_literal(text: str, prime: int) -> Fraction:
    """ Exact value of a literal such as '1+7^3', '49', '3/2' or '1 + p^2' """
    return _LiteralParser(str(text), prime).parse()


def parse_padic_literal(text: str, prime: int, precision: int = None) -> PadicNumber:
    value = parse_rational_literal(text, prime)
    if value == 0:
        return zero(prime)
    return coerce(value, prime, int(precision or default_precision()))


# --------------------------------------------------------------------------
#            Experiment configuration
# --------------------------------------------------------------------------

@dataclass
class ExperimentConfig:
    experiment: str = 'fixed-points'
    prime: Optional[int] = None
    theta: Optional[str] = None
    q: Optional[str] = None
    q_states: Optional[int] = None
    precision: Optional[int] = None
    seed: int = 0
    max_iter: Optional[int] = None
    out: Optional[str] = None
    points: List[str] = field(default_factory=list)
    samples: Optional[int] = None
    period: Optional[int] = None
    form: Optional[str] = None
    sizes: List[int] = field(default_factory=list)
    alpha_size: Optional[int] = None
    coupling: Optional[str] = None
    word: List[int] = field(default_factory=list)
    timing: bool = False

    def echo(self) -> dict:
        """ Inputs as they appear in a report """
        return {f.name: getattr(self, f.name) for f in fields(self) if f.name != 'out'}

    def theta_value(self) -> Fraction:
        return parse_rational_literal(self.theta, self.prime)

    def q_value(self) -> Fraction:
        if self.q is not None:
            return parse_rational_literal(self.q, self.prime)
        return Fraction(self.q_states)

    def coupling_value(self) -> Optional[Fraction]:
        return None if self.coupling is None else parse_rational_literal(self.coupling, self.prime)


CONFIG_FIELDS = tuple(f.name for f in fields(ExperimentConfig))
INT_FIELDS = ('prime', 'q_states', 'precision', 'seed', 'max_iter', 'samples', 'period', 'alpha_size')
INT_LIST_FIELDS = ('sizes', 'word')


def _field_name(key: str) -> str:
    return key.strip().replace('-', '_')


def load_config_file(path: str) -> Dict[str, str]:
    """ Flat key = value lines, '#' starts a comment """
    values, diagnostics = {}, {}
    with open(path) as f:
        for number, raw in enumerate(f, start=1):
            line = raw.split('#', 1)[0].strip()
            if not line:
                continue
            if '=' not in line:
                diagnostics['line %d' % number] = 'expected key = value'
                continue
            key, value = line.split('=', 1)
            key = _field_name(key)
            if key not in CONFIG_FIELDS:
                diagnostics[key] = 'unknown field (line %d)' % number
                continue
            values[key] = value.strip()
    if diagnostics:
        raise ConfigError(diagnostics)
    return values


def _convert(name: str, value, diagnostics: Dict[str, str]):
    if value is None:
        return None
    try:
        if name in INT_FIELDS:
            return int(value)
        if name in INT_LIST_FIELDS:
            if isinstance(value, (list, tuple)):
                return [int(v) for v in value]
            text = str(value).replace(',', ' ').split()
            return [int(v) for v in text]
        if name == 'points':
            if isinstance(value, (list, tuple)):
                return [str(v) for v in value]
            return [v.strip() for v in str(value).split(',') if v.strip()]
        if name == 'timing':
            if isinstance(value, bool):
                return value
            return str(value).strip().lower() in ('1', 'true', 'yes', 'on')
        return str(value).strip()
    except ValueError:
        diagnostics[name] = 'cannot read %r' % (value,)
        return None


def _validate(config: ExperimentConfig, diagnostics: Dict[str, str]):
    if config.experiment not in EXPERIMENTS:
        diagnostics['experiment'] = 'unknown experiment ' + repr(config.experiment)
        return
    for name in REQUIRED[config.experiment]:
        if name == 'theta' and config.coupling is not None:
            continue
        if name == 'q' and config.q_states is not None:
            continue
        if getattr(config, name) in (None, []):
            diagnostics[name] = 'required by ' + config.experiment
    if config.prime is not None and not is_prime(config.prime):
        diagnostics['prime'] = '%d is not prime' % config.prime
        return
    if config.precision is not None and config.precision < 2:
        diagnostics['precision'] = 'must be at least 2'
    literals = [(name, getattr(config, name)) for name in ('theta', 'q', 'coupling')]
    literals += [('points', text) for text in config.points]
    if config.prime is not None:
        for name, text in literals:
            if text is None:
                continue
            try:
                parse_rational_literal(text, config.prime)
            except ParseError as e:
                diagnostics[name] = str(e)
    if config.form is not None and config.form.upper() not in ('A', 'B', 'C', 'D', 'E'):
        diagnostics['form'] = 'must be one of A, B, C, D, E'


def build_config(flags: Dict[str, object] = None, file_values: Dict[str, str] = None) -> ExperimentConfig:
    """ Command-line flags override the config file, which overrides the environment and the defaults """
    merged = {}
    for source in (file_values or {}, flags or {}):
        for key, value in source.items():
            if value is not None:
                merged[_field_name(key)] = value
    diagnostics: Dict[str, str] = {}
    unknown = [k for k in merged if k not in CONFIG_FIELDS]
    for k in unknown:
        diagnostics[k] = 'unknown field'
    kwargs = {k: _convert(k, v, diagnostics) for k, v in merged.items() if k in CONFIG_FIELDS}
    kwargs = {k: v for k, v in kwargs.items() if v is not None}
    config = ExperimentConfig(**kwargs)
    if config.precision is None:
        config.precision = default_precision()
    if not diagnostics:
        _validate(config, diagnostics)
    if diagnostics:
        raise ConfigError(diagnostics)
    return config

