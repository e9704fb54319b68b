import argparse
import sys

from padiz.cli import EXPERIMENTS, build_config, load_config_file
from padiz.client import Padiz
from padiz.errors import ConfigError
from padiz.utilities import dumps


def _add_flags(parser: argparse.ArgumentParser):
    parser.add_argument('--config', help='flat key = value file; flags override it')
    parser.add_argument('--prime', type=int)
    parser.add_argument('--theta', help='literal such as 1+7^3')
    parser.add_argument('--q', help='literal such as 7 or p^2')
    parser.add_argument('--q-states', dest='q_states', type=int)
    parser.add_argument('--precision', type=int)
    parser.add_argument('--seed', type=int)
    parser.add_argument('--max-iter', dest='max_iter', type=int)
    parser.add_argument('--out')
    parser.add_argument('--points', help='comma separated literals')
    parser.add_argument('--samples', type=int)
    parser.add_argument('--period', type=int)
    parser.add_argument('--form')
    parser.add_argument('--sizes', help='comma separated partition sizes')
    parser.add_argument('--alpha-size', dest='alpha_size', type=int)
    parser.add_argument('--coupling', help='J literal, θ = exp_p(J)')
    parser.add_argument('--word', help='comma separated symbols')
    parser.add_argument('--timing', action='store_true', default=None)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='padiz', description='p-adic Potts-Bethe dynamics and Gibbs measures')
    subparsers = parser.add_subparsers(dest='experiment', required=True)
    for name in EXPERIMENTS:
        _add_flags(subparsers.add_parser(name))
    return parser


def main(argv=None) -> int:
    args = vars(make_parser().parse_args(argv))
    path = args.pop('config', None)
    try:
        file_values = load_config_file(path) if path else {}
        config = build_config(flags=args, file_values=file_values)
    except ConfigError as e:
        print(dumps({'errors': [{'operation': 'config', 'diagnostics': e.diagnostics}]}), file=sys.stderr)
        return 1
    report = Padiz().run_experiment(config)
    text = report.to_json()
    if config.out:
        with open(config.out, 'w') as f:
            f.write(text + '\n')
    else:
        print(text)
    return report.exit_code


if __name__ == '__main__':
    sys.exit(main())
