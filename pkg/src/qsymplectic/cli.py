'''
Command line for the verification suites

    qsymplectic relations --m 1 --n 2
    qsymplectic duality --m 3 --n 3 --mode modp --seed 7
    qsymplectic truncate --m 1 --m0 2 --n 2 --format text
'''

from pathlib import Path
import argparse
import logging
import os
import sys

from .QSPException import QSPGuardError, BadEvaluationError, IntegralityError
from .QSPVerifier import QSPVerifier, SUITES
from .constants import EXIT_PASS, EXIT_FAIL, EXIT_GUARD, EXIT_BAD_EVALUATION, REPORT_DIR_ENV, \
    LINEAR_ALGEBRA_MODES, SUITE_COUNTS, SUITE_TRUNCATE, SUITE_RELATIONS, SUITE_DUALITY, SUITE_OEHMS, \
    SUITE_PROJECTORS, SUITE_BIMODULE, SUITE_HECKE, SUITE_SERRE
from .reports import envelope, render_text
from .utils import dump_json

logger = logging.getLogger(__name__)

HELP = {
    SUITE_RELATIONS: 'BMW relations, skein identity and operator identities',
    SUITE_DUALITY: 'double centralizer, faithfulness and commutation of the two actions',
    SUITE_COUNTS: 'the (2n-1)!! rank identity',
    SUITE_OEHMS: 'bideterminant basis against the Schur algebra',
    SUITE_PROJECTORS: 'weight projectors from quantum binomial brackets',
    SUITE_TRUNCATE: 'compression from rank m0 to rank m',
    SUITE_BIMODULE: 'bimodule dimension identity',
    SUITE_HECKE: 'Hecke operator checks',
    SUITE_SERRE: 'quantum group relations on tensor space',
}


def _common_flags():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--threads', type=int, default=None, help='worker threads (default: all cores)')
    common.add_argument('--format', choices=('json', 'text'), default=None, dest='output_format')
    common.add_argument('--out', default=None, help='output file (default: stdout, or REPORT_DIR when set)')
    common.add_argument('--log-level', default='WARNING', choices=('DEBUG', 'INFO', 'WARNING', 'ERROR'))
    common.add_argument('--seed', type=int, default=None, help='seed of the prime-field sampling')
    common.add_argument('--mode', choices=LINEAR_ALGEBRA_MODES, default=None)
    common.add_argument('--prime', type=int, default=None, help='fixed prime for prime-field runs')
    return common


def build_parser():
    parser = argparse.ArgumentParser(prog='qsymplectic', description='Exact checks of type C Schur-Weyl duality.')
    common = _common_flags()
    commands = parser.add_subparsers(dest='command', required=True)
    for suite in SUITES:
        sub = commands.add_parser(suite, parents=[common], help=HELP[suite])
        if suite == SUITE_COUNTS:
            sub.add_argument('--n-max', type=int, default=8)
            continue
        sub.add_argument('--m', type=int, default=None)
        if suite == SUITE_TRUNCATE:
            sub.add_argument('--m0', type=int, required=True)
        sub.add_argument('--n', type=int, default=None)
    return parser


def run(args, verifier):
    '''
    Dispatch one parsed command to the verifier
    '''
    command = args.command
    if command == SUITE_COUNTS:
        return verifier.counts(args.n_max)
    if command == SUITE_TRUNCATE:
        return verifier.truncate(args.m, args.m0, args.n, args.mode, args.seed, args.prime)
    if command == SUITE_DUALITY:
        return verifier.duality(args.m, args.n, args.mode, args.seed, args.prime, args.threads)
    if command in (SUITE_OEHMS, SUITE_HECKE):
        return getattr(verifier, command)(args.m, args.n, args.mode, args.seed, args.prime)
    return getattr(verifier, command)(args.m, args.n)


def emit(reports, args, verifier):
    if verifier.output_format == 'text':
        text = render_text(reports)
    else:
        text = dump_json(envelope(reports, args.command, verifier.seed))
    if args.out:
        path = Path(args.out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text + '\n')
    elif os.getenv(REPORT_DIR_ENV) and verifier.output_format != 'text':
        verifier.save_report(reports, args.command)
    else:
        print(text)


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=getattr(logging, args.log_level), format='%(levelname)s %(name)s: %(message)s')
    try:
        verifier = QSPVerifier({'mode': args.mode, 'seed': args.seed, 'prime': args.prime,
                                'threads': args.threads, 'output_format': args.output_format},
                               use_cached_settings=False)
        reports = run(args, verifier)
    except BadEvaluationError as exc:
        print(f'error: {exc} (tried {exc.tried})', file=sys.stderr)
        return EXIT_BAD_EVALUATION
    except IntegralityError as exc:
        print(f'failure: {exc} (witness {exc.witness})', file=sys.stderr)
        return EXIT_FAIL
    except QSPGuardError as exc:
        print(f'error: {exc}', file=sys.stderr)
        return EXIT_GUARD
    emit(reports, args, verifier)
    return EXIT_FAIL if any(r.status == 'fail' for r in reports) else EXIT_PASS


if __name__ == '__main__':
    sys.exit(main())
