# -*- coding: utf-8 -*-

"""
cli is the dp2 command line: closed-form values, mutations, contours,
extraction, verification, sweeps and rendering.

Steps:
1- Parse the command and the global flags
2- Load the configuration and set up logging
3- Dispatch to the engine and map its errors to exit codes
"""

import argparse
import json
import logging
import re
import sys

import pandas as pd

from dp2_cluster.casework import sweep_cases
from dp2_cluster.config import load_config
from dp2_cluster.contour import contour_for, extract, parse_contour, reflect_case, to_json
from dp2_cluster.errors import CapExceeded, Dp2Error
from dp2_cluster.laurent import to_text
from dp2_cluster.matching import sweep, verify_main_theorem
from dp2_cluster.quiver import (apply_rho_word, classify_model, dp2_model1_seed, format_rho_word, mutate_word,
                                normal_form, parse_mutation_word, parse_rho_word)
from dp2_cluster.render import render_to_svg
from dp2_cluster.somos import ClassifiedVariable, Family, evaluate, evaluate_at_ones, parse_variable
from dp2_cluster.tiling import dp2_tiling

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_CAP = 3

_CLASSIFIED = re.compile(r'^\(\s*(even|odd)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\)$', re.IGNORECASE)


# Commands -------------------------------------------------------------------------------------------------------------
def emit (args, report: dict, text) -> None:
    '''One JSON object with --json, else the plain text'''
    print(json.dumps(report) if args.json else text)


def cmd_compute (args, config) -> int:
    spec = parse_variable(args.spec)
    value = evaluate_at_ones(spec) if args.at_ones else to_text(evaluate(spec))
    emit(args, {'spec': args.spec, 'value': value}, value)
    return EXIT_OK


def cmd_mutate (args, config) -> int:
    text = args.word.strip()
    if text.startswith('r'):
        word = parse_rho_word(text)
        seed = apply_rho_word(dp2_model1_seed(), word)
    else:
        word = parse_mutation_word(text)
        seed = mutate_word(dp2_model1_seed(), word)
    cluster = [to_text(v) for v in seed.cluster]
    emit(args, {'word': text, 'cluster': cluster, 'model': classify_model(seed.quiver).value}, '\n'.join(cluster))
    return EXIT_OK


def cmd_normal_form (args, config) -> int:
    found = format_rho_word(normal_form(parse_rho_word(args.word)))
    emit(args, {'word': args.word, 'normal_form': found}, found)
    return EXIT_OK


def cmd_contour (args, config) -> int:
    c = str(contour_for(ClassifiedVariable(Family(args.family), args.k, args.n)))
    emit(args, {'family': args.family, 'n': args.n, 'k': args.k, 'contour': c}, c)
    return EXIT_OK


def cmd_extract (args, config) -> int:
    e = extract(parse_contour(args.contour), dp2_tiling(args.fixture))
    print(json.dumps(to_json(e)))
    return EXIT_OK


def cmd_verify (args, config) -> int:
    cap = args.cap if args.cap is not None else config['matching_meta']['matching_cap']
    verdict = verify_main_theorem(ClassifiedVariable(Family(args.family), args.k, args.n),
                                  dp2_tiling(args.fixture), cap)
    print(json.dumps(verdict.to_json()))
    return EXIT_OK if verdict.passed else EXIT_FAILED


def cmd_sweep (args, config) -> int:
    tiling = dp2_tiling(args.fixture)
    if args.cases:
        rows = []
        for line in sweep_cases(config, tiling):
            print(json.dumps(line))
            rows.append(line)
        df = pd.DataFrame(rows, columns=['case', 'n', 'k', 'stage', 'pass', 'detail'])
        failed = int((~df['pass'].astype(bool)).sum())
        print(json.dumps({'summary': {'checks': len(df), 'failed': failed}}))
    else:
        df = sweep(config, tiling, args.cap, args.workers)
        for row in df.to_dict('records'):
            print(json.dumps(row, default=int))
        counts = df['status'].value_counts().to_dict()
        failed = counts.get('fail', 0)
        print(json.dumps({'summary': {status: int(count) for status, count in sorted(counts.items())}}))
    if args.out:
        df.to_csv(args.out, index=False)
        logging.info('Wrote %s', args.out)
    return EXIT_FAILED if failed else EXIT_OK


def cmd_render (args, config) -> int:
    text = args.target.strip()
    m = _CLASSIFIED.match(text)
    if m:
        v = ClassifiedVariable(Family(m.group(1).lower()), int(m.group(2)), int(m.group(3)))
        c = contour_for(reflect_case(v)[0])
    else:
        c = parse_contour(text)
    tiling = dp2_tiling(args.fixture)
    svg = render_to_svg(extract(c, tiling), tiling, config, args.out)
    if args.json:
        print(json.dumps({'contour': str(c), 'out': args.out} if args.out else {'contour': str(c), 'svg': svg}))
    elif not args.out:
        print(svg)
    return EXIT_OK


# Parser ---------------------------------------------------------------------------------------------------------------
def build_parser () -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='dp2', description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument('--config', help='user config.yaml layered over the packaged one')
    parser.add_argument('--fixture', help='tiling fixture JSON, default the packaged one')
    parser.add_argument('--cap', type=int, help='perfect-matching cap')
    parser.add_argument('--verbose', action='store_true', help='debug logging')
    parser.add_argument('--json', action='store_true', help='one JSON object per result line')
    commands = parser.add_subparsers(dest='command', required=True)

    p = commands.add_parser('compute', help='closed-form value of x6, A^2 B x5, (even,3,1), ...')
    p.add_argument('spec')
    p.add_argument('--at-ones', action='store_true', help='evaluate at x1 = ... = x5 = 1')
    p.set_defaults(run=cmd_compute)

    p = commands.add_parser('mutate', help='cluster after a mutation word (m2 m4) or rho word (r1 r3)')
    p.add_argument('word')
    p.add_argument('--json', action='store_true', default=argparse.SUPPRESS, help='same as the global --json')
    p.set_defaults(run=cmd_mutate)

    p = commands.add_parser('normal-form', help='normal form of a rho word')
    p.add_argument('word')
    p.set_defaults(run=cmd_normal_form)

    p = commands.add_parser('contour', help='contour of a classified variable')
    p.add_argument('family', choices=[f.value for f in Family])
    p.add_argument('n', type=int)
    p.add_argument('k', type=int)
    p.set_defaults(run=cmd_contour)

    p = commands.add_parser('extract', help='extracted graph of a contour as JSON')
    p.add_argument('contour')
    p.set_defaults(run=cmd_extract)

    p = commands.add_parser('verify', help='check the main theorem for one variable')
    p.add_argument('family', choices=[f.value for f in Family])
    p.add_argument('n', type=int)
    p.add_argument('k', type=int)
    p.set_defaults(run=cmd_verify)

    p = commands.add_parser('sweep', help='main-theorem grid, or the case fixtures with --cases')
    p.add_argument('--cases', action='store_true')
    p.add_argument('--workers', type=int)
    p.add_argument('--out', help='CSV output')
    p.set_defaults(run=cmd_sweep)

    p = commands.add_parser('render', help='SVG of a contour or of a classified variable (even,3,1)')
    p.add_argument('target')
    p.add_argument('--out', help='SVG output, default stdout')
    p.set_defaults(run=cmd_render)
    return parser


# Main -----------------------------------------------------------------------------------------------------------------
def main (argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
    except OSError as error:
        print(f'dp2: cannot read config: {error}', file=sys.stderr)
        return EXIT_INVALID
    level = logging.DEBUG if args.verbose else config['logging_meta']['level']
    logging.basicConfig(format='%(asctime)s %(levelname)s %(message)s',
                        datefmt='%m/%d/%Y %I:%M:%S %p',
                        level=level)
    try:
        return args.run(args, config)
    except CapExceeded as error:
        logging.error('%s', error)
        print(json.dumps({'error': 'cap', 'cap': error.cap, 'count': error.count}))
        return EXIT_CAP
    except (Dp2Error, ValueError) as error:
        logging.error('%s', error)
        if args.json:
            print(json.dumps({'error': 'invalid', 'message': str(error)}))
        print(f'dp2: {error}', file=sys.stderr)
        return EXIT_INVALID


if __name__ == '__main__':
    sys.exit(main())
