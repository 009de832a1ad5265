from ..core.functions import log
from ..model.audit import AuditReport, Occupancy, Violation, audit_schedule, check_occupancy
from ..model.demand import id_key
from ..tools.ticks import Ticks

__all__ = ['realized_occupancies', 'replay_audit']


def realized_occupancies(trace, network):
    return [Occupancy(node, did, stay.window(network), stay.spot)
            for (did, node), stay in sorted(trace.stays.items(), key=lambda x: (x[0][1], id_key(x[0][0])))]


def replay_audit(trace, network):
    """Audit the realized stays of *trace*: no node above capacity, no spot shared at the same time, no arrival after a deadline.

    The final schedule is audited as well, with the realized arrivals. That check uses worst-case windows for the stops not reached yet and is never weaker, so a clean worst-case audit paired with realized violations points at a simulator fault and is logged.
    """
    violations = check_occupancy(realized_occupancies(trace, network), network)
    for did, t in sorted(trace.completions.items(), key=lambda x: id_key(x[0])):
        d = trace.demands[did]
        if t > d.deadline:
            node = network.route(d.route_id).destination
            violations.append(Violation('deadline', node, t, (did,), 'arrived {} min, deadline {} min'.format(Ticks.format(t), Ticks.format(d.deadline))))
    report = AuditReport(violations)
    if trace.schedule is not None and len(trace.schedule):
        worst = audit_schedule(trace.schedule, trace.demands, network, trace.arrivals)
        if worst.ok and not report.ok:
            log('WARNING: realized stays break {} rules the worst-case audit accepts'.format(len(report)), 3)
        elif not worst.ok:
            log('Worst-case audit of the final schedule: {}'.format(worst), 5)
    return report
