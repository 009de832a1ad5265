import argparse
import csv
import os
import sys
from typing import List, Optional

from ..analysis.bottleneck import compute_bottleneck
from ..analysis.conditions import check_network_necessary, check_node_necessary
from ..analysis.flow import max_flow
from ..analysis.star import star_branches
from ..core.errors import AnalysisError, DemandError, FileError, NetworkError, OracleError, SimulationError, TicksError, VertiError
from ..core.functions import config, init, log
from ..core.settings import Settings
from ..model.audit import audit_schedule
from ..model.cost import sod_cost, sod_lower_bound
from ..model.demand import Journey, id_key
from ..model.journey import journey_blocks, screen_demands
from ..scheduler.dynamic import SchedulerConfig, SchedulerState, SchedulingEvent, event_scheduler, schedule_static
from ..scheduler.oracle import oracle_optimal
from ..simulator.replay import replay_audit
from ..simulator.simulation import SimConfig, run_simulation
from ..simulator.trace import GANTT_COLUMNS
from ..tools.jsonio import read_demands, read_network, read_schedule, schedule_to_dict, write_json
from ..tools.ticks import Ticks
from .cases import case_file, load_case

__all__ = ['main', 'build_parser']

EXIT_OK, EXIT_INVALID, EXIT_INCOMPLETE = 0, 1, 2


def _resolve(path):
    """Return *path*, or the bundled case file of the same name when *path* does not exist."""
    if path is None or os.path.isfile(path):
        return path
    return case_file(os.path.basename(path))


def _inputs(args, need_demands=True):
    if getattr(args, 'case', None):
        bundle = load_case(args.case)
        demands = bundle.demands(getattr(args, 'seed', 0) or 0, getattr(args, 'generator', None))
        return bundle.network, demands
    if not args.network:
        raise FileError('Give a network with -n or a bundled case with --case')
    network = read_network(_resolve(args.network))
    demands = []
    if getattr(args, 'demands', None):
        demands = read_demands(_resolve(args.demands), network)
    elif need_demands:
        raise FileError('Give demands with -d or a bundled case with --case')
    return network, demands


def _emit(args, data, text):
    if args.json:
        print(write_json(data))
    else:
        print(text)


def _scheduler_config(args):
    """The scheduler options given on the command line, completed with ``config.scheduler``."""
    opts = Settings()
    if getattr(args, 'k0', None) is not None:
        opts.k0 = args.k0
    nodes, ms = getattr(args, 'budget_nodes', None), getattr(args, 'budget_ms', None)
    if nodes is not None or ms is not None:
        opts.budget_nodes = nodes
        opts.budget_ms = ms
    if 'scheduler' in config:
        opts += config.scheduler
    return SchedulerConfig.from_settings(opts)


#===========================================================================


def cmd_validate(args):
    network, demands = _inputs(args, need_demands=False)
    accepted, rejected = screen_demands(demands, network)
    data = {'valid': True, 'nodes': len(network.nodes), 'edges': len(network.edges), 'routes': sorted(network.routes),
            'demands': len(demands), 'infeasible_at_release': sorted((d.id for d in rejected), key=id_key)}
    text = str(network).rstrip() + '\n{} demands, {} infeasible when released'.format(len(demands), len(rejected))
    _emit(args, data, text)
    return EXIT_OK


def cmd_analyze(args):
    network, demands = _inputs(args, need_demands=False)
    flow = max_flow(network)
    data = {'max_flow': float(flow.objective), 'max_flow_per_min': str(flow.objective), 'flow': flow.as_dict()}
    lines = ['Maximum flow: {} per minute ({:.4f})'.format(flow.objective, float(flow.objective))]
    try:
        bottleneck = compute_bottleneck(network, flow, args.method)
        data['bottleneck'] = sorted(bottleneck.nodes)
        data['bottleneck_detail'] = bottleneck.as_dict()
        lines.append('Bottleneck: {} carrying {} per minute'.format(sorted(bottleneck.nodes), bottleneck.rate))
    except AnalysisError as exc:
        bottleneck = None
        data['bottleneck'] = None
        lines.append('Bottleneck: none ({})'.format(exc))
    try:
        center, spans = star_branches(network)
        data['star'] = {'center': center, 'spans_min': {r: Ticks.to_minutes(s) for r, s in spans.items()}}
        lines.append('Star network around {}'.format(center))
    except AnalysisError:
        data['star'] = None
    if demands:
        now = Ticks.from_minutes(args.now_min)
        nodes = check_node_necessary(demands, network, now)
        data['nodes'] = {v: nv.as_dict() for v, nv in nodes.items()}
        for v, nv in nodes.items():
            lines.append('Node {}: {}'.format(v, nv.refined))
        if bottleneck is not None:
            verdict = check_network_necessary(demands, network, now, bottleneck)
            data['network'] = verdict.as_dict()
            lines.append('Network: {}'.format(verdict))
    _emit(args, data, '\n'.join(lines))
    return EXIT_OK


def cmd_schedule(args):
    network, demands = _inputs(args)
    now = Ticks.from_minutes(args.now_min) if args.now_min is not None else min((d.release_time for d in demands), default=0)
    if args.oracle:
        result = oracle_optimal(demands, network, now)
        schedule = result.schedule if result is not None else None
        dropped = []
    else:
        sched_config = _scheduler_config(args)
        if args.static:
            state = schedule_static(network, demands, now, sched_config)
        else:
            state = SchedulerState(network)
            event_scheduler(network, SchedulingEvent(now, 'release', tuple(demands)), state, sched_config)
        schedule = state.schedule
        dropped = sorted(state.dropped, key=id_key)
        if args.history:
            state.write_history(args.history)
            log('Wrote {} incumbents to {}'.format(len(state.history), args.history), 5)
    if schedule is None:
        data = {'entries': [], 'sod_min': None, 'lower_bound_min': Ticks.to_minutes(sod_lower_bound(demands, network)), 'complete': False}
        _emit(args, data, 'No complete schedule exists')
        return EXIT_INCOMPLETE if args.require_complete else EXIT_OK

    scheduled = [d for d in demands if d.id in schedule]
    complete = len(schedule) == len(demands)
    audit = audit_schedule(schedule, demands, network)
    data = schedule_to_dict(schedule, sod_min=Ticks.to_minutes(sod_cost(schedule, demands)),
                            lower_bound_min=Ticks.to_minutes(sod_lower_bound(scheduled, network)),
                            complete=complete, dropped=dropped, audit=audit.as_dict())
    if args.output:
        write_json(data, args.output)
    text = '{}\nSoD {} min, lower bound {} min, {} of {} demands scheduled\n{}'.format(
        schedule, Ticks.format(sod_cost(schedule, demands)), Ticks.format(sod_lower_bound(scheduled, network)),
        len(schedule), len(demands), audit)
    _emit(args, data, text)
    if not complete and args.require_complete:
        return EXIT_INCOMPLETE
    return EXIT_OK


def cmd_simulate(args):
    network, demands = _inputs(args)
    horizon = Ticks.from_minutes(args.horizon_min) if args.horizon_min is not None else None
    settings = config.simulation if 'simulation' in config else None
    sim = SimConfig.from_settings(settings, args.seed, horizon) if settings is not None else SimConfig(args.seed, horizon)
    trace = run_simulation(network, demands, _scheduler_config(args), sim)
    report = replay_audit(trace, network)
    if args.trace:
        trace.write_csv(args.trace)
    if args.gantt:
        trace.write_gantt(args.gantt)
    if args.dump:
        trace.pickle(args.dump)
    data = dict(trace.summary(), audit=report.as_dict())
    text = '\n'.join('{}: {}'.format(k, v) for k, v in data.items() if k != 'audit') + '\n' + str(report)
    _emit(args, data, text)
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_gantt(args):
    network, demands = _inputs(args)
    schedule = read_schedule(_resolve(args.schedule))
    byid = {d.id: d for d in demands}
    rows = []
    for did, entry in sorted(schedule.items(), key=lambda x: id_key(x[0])):
        if did not in byid:
            raise DemandError('Scheduled demand {} is unknown'.format(did))
        for node, window in journey_blocks(Journey(byid[did], entry.departure, {}, dict(entry.spots)), network).items():
            rows.append({'node': node, 'demand': did, 'spot': entry.spots.get(node, ''),
                         'block_lo_min': Ticks.format(window.lo), 'block_hi_min': Ticks.format(window.hi), 'realized_arrival_min': ''})
    rows.sort(key=lambda r: (r['node'], r['block_lo_min']))
    out = open(args.output, 'w', newline='', encoding='utf-8') if args.output else sys.stdout
    try:
        writer = csv.DictWriter(out, fieldnames=GANTT_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


#===========================================================================


def build_parser():
    parser = argparse.ArgumentParser(prog='vertisched', description='Capacity-aware scheduling of urban air mobility flights.')
    sub = parser.add_subparsers(dest='command', required=True)

    def common(p, demands=True):
        p.add_argument('-n', '--network', metavar='FILE', help='network JSON file')
        if demands:
            p.add_argument('-d', '--demands', metavar='FILE', help='demands JSON file')
        p.add_argument('--case', metavar='NAME', help='use a bundled case study instead of -n/-d')
        p.add_argument('--generator', metavar='NAME', help='demand generator of the bundled case')
        p.add_argument('--json', action='store_true', help='print machine readable JSON')
        p.add_argument('-v', '--verbose', action='count', default=0, help='more log output, repeat for more')

    def scheduling(p):
        p.add_argument('--k0', type=int, help='largest batch handed to one insertion attempt')
        budget = p.add_mutually_exclusive_group()
        budget.add_argument('--budget-nodes', type=int, help='search budget in explored nodes (reproducible)')
        budget.add_argument('--budget-ms', type=int, help='search budget in milliseconds')

    p = sub.add_parser('validate', help='check network and demand files')
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser('analyze', help='throughput, bottleneck and necessary conditions')
    common(p)
    p.add_argument('--now-min', type=float, default=0, help='current time for the demand conditions')
    p.add_argument('--method', choices=['auto', 'greedy', 'exhaustive'], default='auto', help='bottleneck search')
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser('schedule', help='compute a schedule')
    common(p)
    scheduling(p)
    p.add_argument('--now-min', type=float, help='scheduling instant, the earliest release by default')
    p.add_argument('--oracle', action='store_true', help='exact optimum by enumeration (few demands only)')
    p.add_argument('--static', action='store_true', help='search all demands together, repeating at the same instant until everything is placed')
    p.add_argument('--require-complete', action='store_true', help='exit with 2 when some demand is left out')
    p.add_argument('--seed', type=int, default=0, help='seed of the case demand generator')
    p.add_argument('--history', metavar='FILE', help='write the SoD of every improving search incumbent as CSV')
    p.add_argument('-o', '--output', metavar='FILE', help='write the schedule JSON to FILE')
    p.set_defaults(func=cmd_schedule)

    p = sub.add_parser('simulate', help='simulate with random travel times')
    common(p)
    scheduling(p)
    p.add_argument('--seed', type=int, default=0, help='random seed')
    p.add_argument('--horizon-min', type=float, help='stop after this time')
    p.add_argument('--trace', metavar='FILE', help='write the event log as CSV')
    p.add_argument('--gantt', metavar='FILE', help='write the per node blocking windows and arrivals as CSV')
    p.add_argument('--dump', metavar='FILE', help='pickle the complete trace')
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser('gantt', help='plot-ready CSV of a schedule')
    common(p)
    p.add_argument('-s', '--schedule', metavar='FILE', required=True, help='schedule JSON file')
    p.add_argument('-o', '--output', metavar='FILE', help='CSV file, standard output by default')
    p.add_argument('--seed', type=int, default=0, help='seed of the case demand generator')
    p.set_defaults(func=cmd_gantt)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Run the command line tool and return the exit code: 0 on success, 1 when an input is invalid, 2 when ``--require-complete`` was given and not every demand could be scheduled."""
    args = build_parser().parse_args(argv)
    quiet = args.json and not args.verbose
    init({'log': {'stdout': 0 if quiet else 3 + 2 * args.verbose}})
    try:
        return args.func(args)
    except (FileError, TicksError, NetworkError, DemandError, OracleError, SimulationError) as exc:
        print('error: {}'.format(exc), file=sys.stderr)
        return EXIT_INVALID
    except VertiError as exc:
        log('ERROR: {}'.format(exc), 1)
        print('error: {}'.format(exc), file=sys.stderr)
        return EXIT_INVALID
