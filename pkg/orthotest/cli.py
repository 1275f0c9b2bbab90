#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Created on Sun Oct 18 2026

This file is the command-line interface of the rectilinear planarity tester.

Subcommands:
    test FILE                 print YES or NO (exit 0 / 1)
    realize FILE -o OUT       write a drawing as .svg or .json
    oracle FILE               brute-force verdict on a small graph
    spirality FILE --root u,v dump the spirality sets of one rooted view
    gen lower-bound|random    write a generated graph as JSON
    bench --suite general|ip  time the testers on generated graphs (CSV)

Any input or validation failure exits with code 2 and a message on stderr.
Progress banners also go to stderr; stdout carries only verdicts and dumps.

Written in Python 3.6
"""
import argparse
import json
import logging
import os
import sys
import time
from multiprocessing import Pool

import pandas as pd
from tqdm import tqdm

from orthotest.block_composer import realize_graph, test_graph
from orthotest.config import Config
from orthotest.errors import OrthoTestError
from orthotest.generators import (KIND_IP, KIND_PARTIAL2TREE, KIND_SP, KINDS,
                                  LowerBoundParams, gen_lower_bound, gen_random)
from orthotest.graph_model import SP_BLOCK, graph_to_json, validate_partial2tree
from orthotest.oracle import oracle_test
from orthotest.realizer import to_json, to_svg, validate_rep
from orthotest.sp_tester import spirality_tables
from orthotest.spq_decomposition import Q_NODE, build_spq_star, dump_tree
from orthotest.utilities import (read_bench_table, read_graph_file,
                                 write_pandas, write_text)

logger = logging.getLogger(__name__)

EXIT_YES = 0
EXIT_NO = 1
EXIT_ERROR = 2

BENCH_COLUMNS = ['n', 'edges', 'kind', 'verdict', 'micros']


def banner(title):
    print("\n*********************************", file=sys.stderr)
    print(f"***  {title.center(25)}  ***", file=sys.stderr)
    print("*********************************", file=sys.stderr)


def _read(fp, encoding):
    g, _, error = read_graph_file(fp, encoding)
    if error is not None:
        raise OrthoTestError(f"File loading failed: {error}")
    return g


def _emit(text, outfile):
    if outfile is None:
        print(text)
        return
    error = write_text(outfile, text)
    if error is not None:
        raise OrthoTestError(f"Could not write {outfile}: {error}")
    print(f"Output written to {outfile}", file=sys.stderr)


################################################################################
## COMMANDS
################################################################################

def cmd_test(args, config):
    g = _read(args.infile, args.encoding)
    print(f"Testing a graph with n={g.n}, m={g.m}...", file=sys.stderr)
    verdict = test_graph(g, config)
    print("YES" if verdict.ok else "NO")
    if args.emit_witness and verdict.detail is not None:
        print(json.dumps(verdict.detail.to_dict(), sort_keys=True))
    return EXIT_YES if verdict.ok else EXIT_NO


def cmd_realize(args, config):
    g = _read(args.infile, args.encoding)
    verdict = test_graph(g, config)
    if not verdict.ok:
        print("NO")
        return EXIT_NO
    rep = realize_graph(g, verdict, config)
    report = validate_rep(rep)
    if not report.ok:
        raise OrthoTestError("representation failed validation: " + "; ".join(report.violations))
    logger.info("validator passed: %d vertices, %d faces", rep.n, len(rep.faces()))
    print("Validator passed.", file=sys.stderr)
    text = to_svg(rep) if args.outfile.lower().endswith('.svg') else to_json(rep)
    _emit(text, args.outfile)
    print("YES")
    return EXIT_YES


def cmd_oracle(args, config):
    g = _read(args.infile, args.encoding)
    ok = oracle_test(g, config=config)
    print("YES" if ok else "NO")
    return EXIT_YES if ok else EXIT_NO


def _root_for_edge(tree, g, pair):
    try:
        u, v = (int(x) for x in pair.split(','))
    except ValueError:
        raise OrthoTestError(f"--root expects 'u,v', got {pair!r}")
    if not g.has_edge(u, v):
        raise OrthoTestError(f"({u}, {v}) is not an edge")
    e = g.edge_id(u, v)
    for node in tree.nodes:
        if node.kind == Q_NODE and e in node.chain.edges:
            return node.id
    raise OrthoTestError(f"no chain holds edge ({u}, {v})")


def cmd_spirality(args, config):
    g = _read(args.infile, args.encoding)
    kind = validate_partial2tree(g)
    if kind != SP_BLOCK:
        raise OrthoTestError(f"spirality tables need a series-parallel block, got {kind}")
    root = None
    if args.root is not None:
        root = _root_for_edge(build_spq_star(g), g, args.root)
    view, sets = spirality_tables(g, root, config)
    doc = dump_tree(view.tree, view)
    doc['sets'] = {str(node): s.to_halves() for node, s in sorted(sets.items())}
    _emit(json.dumps(doc, sort_keys=True, indent=1), args.outfile)
    return EXIT_YES


def cmd_gen(args, config):
    if args.family == 'lower-bound':
        g = gen_lower_bound(LowerBoundParams(args.N))
    else:
        g = gen_random(args.kind, args.n, args.seed)
    print(f"Generated a graph with n={g.n}, m={g.m}", file=sys.stderr)
    _emit(graph_to_json(g), args.outfile)
    return EXIT_YES


def _bench_one(job):
    """Generate and time one instance; runs inside a worker process."""
    kind, n, seed, settings = job
    config = Config(**settings)
    g = gen_random(kind, n, seed)
    start = time.perf_counter()
    verdict = test_graph(g, config)
    micros = int((time.perf_counter() - start) * 1e6)
    return {'n': g.n, 'edges': g.m, 'kind': kind,
            'verdict': 'YES' if verdict.ok else 'NO', 'micros': micros}


def cmd_bench(args, config):
    if args.suite == 'ip':
        kinds, fast_path = [KIND_IP], 'on'
    else:
        kinds, fast_path = [KIND_SP, KIND_PARTIAL2TREE], 'off'
    settings = {'FAST_PATH': fast_path, 'USE_FFT': config.USE_FFT,
                'LAZY_LABELS': config.LAZY_LABELS}
    sizes = [int(x) for x in args.sizes.split(',')]
    jobs = [(kinds[i % len(kinds)], n, args.seed + i, settings)
            for n in sizes for i in range(args.count)]
    print(f"Running {len(jobs)} instances on {args.workers} worker(s)...", file=sys.stderr)
    if args.workers > 1:
        with Pool(args.workers) as pool:
            rows = list(tqdm(pool.imap(_bench_one, jobs), total=len(jobs)))
    else:
        rows = [_bench_one(job) for job in tqdm(jobs)]
    df = pd.DataFrame(rows, columns=BENCH_COLUMNS)
    if args.append and args.outfile is not None and os.path.exists(args.outfile):
        previous, error = read_bench_table(args.outfile)
        if error is not None:
            raise OrthoTestError(f"Could not read {args.outfile}: {error}")
        df = pd.concat([previous[BENCH_COLUMNS], df], ignore_index=True)
    if args.outfile is None:
        print(df.to_csv(index=False), end='')
    else:
        error = write_pandas(df, args.outfile)
        if error is not None:
            raise OrthoTestError(f"Could not write {args.outfile}: {error}")
        print(f"Bench table written to {args.outfile}", file=sys.stderr)
    return EXIT_YES


################################################################################
## ARGUMENTS
################################################################################

def build_parser():
    parser = argparse.ArgumentParser(
        prog='orthotest',
        description="Rectilinear planarity testing of degree-4 partial 2-trees")
    parser.add_argument("--fast-path", choices=['auto', 'on', 'off'], default=None,
                        help="Use the interval test on independent-parallel blocks")
    parser.add_argument("--fft", choices=['on', 'off'], default=None,
                        help="Use FFT convolution for wide spirality sets")
    parser.add_argument("--emit-witness", action='store_true',
                        help="Print the witness of a YES verdict as JSON")
    parser.add_argument("--lazy-labels", action='store_true',
                        help="Compute block labels on demand instead of upfront")
    parser.add_argument("--log-level", type=str, default=None,
                        help="Logging level (default from ORTHOTEST_LOG_LEVEL)")
    parser.add_argument("-e", "--encoding", type=str, default='detect',
                        help="Character encoding of the input file")
    sub = parser.add_subparsers(dest='command')
    sub.required = True

    p = sub.add_parser('test', help="Print YES or NO")
    p.add_argument('infile', help="Graph file (JSON or edge list)")
    p.set_defaults(func=cmd_test)

    p = sub.add_parser('realize', help="Write a rectilinear drawing")
    p.add_argument('infile')
    p.add_argument('-o', '--outfile', required=True, help="Output path, .svg or .json")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser('oracle', help="Brute-force verdict (small graphs only)")
    p.add_argument('infile')
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser('spirality', help="Dump the spirality sets of a rooted view")
    p.add_argument('infile')
    p.add_argument('--root', type=str, default=None, help="An edge 'u,v' of the root chain")
    p.add_argument('-o', '--outfile', default=None)
    p.set_defaults(func=cmd_spirality)

    p = sub.add_parser('gen', help="Generate a graph")
    p.add_argument('family', choices=['lower-bound', 'random'])
    p.add_argument('--N', type=int, default=4, help="Lower-bound parameter (even)")
    p.add_argument('--kind', choices=KINDS, default=KIND_SP)
    p.add_argument('--n', type=int, default=50)
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('-o', '--outfile', default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser('bench', help="Time the testers, CSV output")
    p.add_argument('--suite', choices=['general', 'ip'], default='general')
    p.add_argument('--sizes', type=str, default='50,100,200')
    p.add_argument('--count', type=int, default=5)
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--workers', type=int, default=1)
    p.add_argument('--append', action='store_true',
                   help="Add the rows to an existing table at OUTFILE")
    p.add_argument('-o', '--outfile', default=None)
    p.set_defaults(func=cmd_bench)
    return parser


def make_config(args):
    """Configuration from the environment, overridden by the flags given."""
    config = Config()
    if args.fast_path is not None:
        config.FAST_PATH = args.fast_path
    if args.fft is not None:
        config.USE_FFT = args.fft == 'on'
    if args.lazy_labels:
        config.LAZY_LABELS = True
    if args.log_level is not None:
        config.LOG_LEVEL = args.log_level
    return config


def main(argv=None):
    ######################################################################
    # SET UP AND READ COMMAND LINE ARGUMENTS
    ######################################################################
    banner("READ PARAMETERS")
    parser = build_parser()
    args = parser.parse_args(argv)
    config = make_config(args)
    logging.basicConfig(stream=sys.stderr, level=str(config.LOG_LEVEL).upper(),
                        format='%(levelname)s %(name)s: %(message)s')

    ######################################################################
    # CODE EXECUTES
    ######################################################################
    banner(args.command.upper())
    try:
        return args.func(args, config)
    except (OrthoTestError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
