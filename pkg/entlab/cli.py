"""Command line interface.

Every command writes a JSON report to stdout (or to --json FILE); logging goes
to stderr. Errors raised by the library end the process with the exit code of
their class: parse 3, contract 4, numerical 5; click usage errors exit 2.
"""
import json
import logging
from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor

import click
import numpy as np

import entlab.entlab_lib as glib
from entlab.errors import EntlabError
from entlab.utils import LOGLEVELS, setlogger, closelogger
from entlab.tensor_core import PartitionSpec, PureState, as_density, partial_trace
from entlab.states import StateRecipe, make_bell
from entlab.state_io import read_state, write_state, format_state, read_kraus, digest, ReportDocument
from entlab import separability, measures, nonlocality, locc
from entlab.selftest import SelfTest

logger = logging.getLogger('entlab.cli')

# utils


def parse_numbers(param, text, cast=float, count=None):
    try:
        vals = [cast(v) for v in text.replace(';', ',').split(',') if v.strip()]
    except ValueError:
        raise click.BadParameter(
            "Couldn't understand the list of numbers for the '{}' argument.".format(param))
    if count is not None and len(vals) != count:
        raise click.BadParameter(
            "The '{}' argument needs {:d} numbers, got {:d}.".format(param, count, len(vals)))
    return vals


def parse_split(param, text):
    if not text:
        return None
    try:
        return PartitionSpec.parse(text)
    except EntlabError:
        raise click.BadParameter(
            "Couldn't understand the partition for the '{}' argument, use e.g. '0|1,2'.".format(param))


def parse_tokens(text):
    return [t.strip() for t in text.split(',') if t.strip()]


def emit(report, json_fn):
    if json_fn:
        report.write(json_fn)
        logger.info('report written to {}'.format(json_fn))
    else:
        click.echo(report.to_json(), nl=False)


json_option = click.option('--json', 'json_fn', default=None, type=click.Path(dir_okay=False),
                           help='write the JSON report to this file instead of stdout')


class EntlabGroup(click.Group):
    """Click group that turns library errors into their exit codes."""

    def invoke(self, ctx):
        try:
            return super(EntlabGroup, self).invoke(ctx)
        except EntlabError as e:
            click.echo('Error: {}'.format(e), err=True)
            ctx.exit(e.exit_code)


@click.group(cls=EntlabGroup)
@click.option('--config', default=None, type=click.Path(dir_okay=False), help='path to entlab ini file')
@click.option('--loglevel', default=None, type=click.Choice(LOGLEVELS), help='log level, overrides logging:level')
@click.option('--logfile', default=None, type=click.Path(dir_okay=False), help='also log to this file, overrides logging:logfile')
@click.pass_context
def cli(ctx, config=None, loglevel=None, logfile=None):
    """Entanglement toolkit: generate states, test separability, evaluate measures,
    check Bell inequalities and simulate LOCC protocols."""
    glib.load_settings(config)
    root = setlogger(glib.settings, level=loglevel, logfilename=logfile)
    ctx.call_on_close(lambda: closelogger(root))
    logger.debug('settings: {}'.format(json.dumps(glib.settings.to_dict())))


"""
gen
"""


@click.command()
@click.argument('recipe', type=click.Choice(StateRecipe.names()))
@click.option('-o', '--out', default=None, type=click.Path(dir_okay=False), help='state file to write')
@click.option('--k', type=int, default=None, help='Bell state index 0..3 (psi-, phi-, psi+, phi+)')
@click.option('--d', type=int, default=None, help='local dimension')
@click.option('--n', type=int, default=None, help='number of subsystems')
@click.option('--p', type=float, default=None, help='mixing parameter')
@click.option('--F', 'F', type=float, default=None, help='singlet fraction')
@click.option('--a', type=float, default=None, help='chessboard parameter')
@click.option('--m', type=int, default=None, help='number of qubits (dur-cirac)')
@click.option('--lam0-plus', type=float, default=None, help='GHZ+ weight (dur-cirac)')
@click.option('--lam0-minus', type=float, default=None, help='GHZ- weight (dur-cirac)')
@click.option('--lams', default=None, help='comma separated weights lambda_k (dur-cirac)')
@click.option('--weights', default=None, help='comma separated Bell weights (bell-diagonal)')
@click.option('--dims', default=None, help='comma separated subsystem dimensions (random states)')
@click.option('--rank', type=int, default=None, help='rank of a random density matrix')
@click.option('--terms', type=int, default=None, help='product terms of a random separable state')
@click.option('--seed', type=int, default=None, help='seed for random states')
@json_option
def gen(recipe, out=None, json_fn=None, **params):
    """
    Generates a named state and writes it in the QSTATE text format.

    Only the parameters the recipe takes may be given. Without the 'out' option the
    state file is written to stdout; with it, a JSON report with the recipe and the
    digest of the written file goes to stdout.

    EXAMPLE

    entlab gen werner --d 2 --p 0.9 -o werner.qstate
    """
    for key in ['lams', 'weights']:
        if params[key] is not None:
            params[key] = parse_numbers(key, params[key])
    if params['dims'] is not None:
        params['dims'] = parse_numbers('dims', params['dims'], int)
    accepted = StateRecipe.parameters(recipe)
    given = dict((k, v) for k, v in params.items() if v is not None)
    for key in given:
        if key not in accepted:
            raise click.BadParameter("Recipe '{}' does not take '{}'.".format(recipe, key))
    if recipe.startswith('random') and 'seed' not in given:
        given['seed'] = glib.settings.seed
    rcp = StateRecipe(recipe, **given)
    state = rcp.build()
    text = format_state(state)
    if out is None and json_fn is None:
        click.echo(text, nl=False)
        return
    if out is not None:
        write_state(state, out)
    report = ReportDocument('gen', digest(str(rcp)))
    report.add('recipe', str(rcp))
    report.add('kind', 'pure' if isinstance(state, PureState) else 'density')
    report.add('dims', list(state.dims))
    report.add('out', out)
    report.add('state_digest', digest(text.encode('utf-8')))
    emit(report, json_fn)


"""
analyze and measure
"""


def _analyze_one(fn, criteria, partitions, workers):
    state, data = read_state(fn)
    res = separability.battery(state, partitions, criteria, workers)
    out = OrderedDict([('input', fn), ('input_digest', digest(data)), ('dims', list(state.dims))])
    out.update(res.to_dict())
    return data, out


@click.command()
@click.argument('inputs', nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@click.option('-c', '--criteria', default=None,
              help='comma separated criteria, e.g. ppt,realign,entropic:2,witness:swap (default: all)')
@click.option('-p', '--partitions', default=None, help="semicolon separated bipartitions, e.g. '0|1,2;0,1|2'")
@click.option('-w', '--workers', type=int, default=None, help='worker threads across inputs and partitions')
@json_option
def analyze(inputs, criteria=None, partitions=None, workers=None, json_fn=None):
    """
    Runs the separability battery on one or more state files.

    Each state gets the reports of every applicable criterion on every requested
    bipartition (all bipartitions by default) and a combined verdict. Several inputs
    are analyzed on worker threads; results keep the input order.

    EXAMPLE

    entlab analyze werner.qstate --criteria ppt
    """
    crit = parse_tokens(criteria) if criteria else None
    parts = [parse_split('partitions', p) for p in partitions.split(';')] if partitions else None
    workers = glib.settings.workers if workers is None else workers
    if workers < 1:
        raise click.BadParameter("'workers' should be at least 1")
    if len(inputs) > 1 and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda fn: _analyze_one(fn, crit, parts, 1), inputs))
    else:
        results = [_analyze_one(fn, crit, parts, workers) for fn in inputs]
    report = ReportDocument('analyze', digest(b''.join(data for data, _ in results)))
    if len(results) == 1:
        for key, value in results[0][1].items():
            if key != 'input_digest':
                report.add(key, value)
    else:
        report.add('results', [out for _, out in results])
    emit(report, json_fn)


@click.command()
@click.argument('input', type=click.Path(exists=True, dir_okay=False))
@click.option('-m', '--measures', 'tokens', default='neg,logneg,coh',
              help='comma separated measures: {}'.format(', '.join(measures.MEASURES)))
@click.option('-s', '--split', default=None, help="bipartition, e.g. '0|1,2' (default: first subsystem vs rest)")
@json_option
def measure(input, tokens='neg,logneg,coh', split=None, json_fn=None):
    """
    Evaluates entanglement measures on a state file.

    Parameterized measures take their parameter after a colon, e.g. tau:2.

    EXAMPLE

    entlab measure ghz.qstate --measures tangle3,ee
    """
    split = parse_split('split', split)
    state, data = read_state(input)
    report = ReportDocument('measure', digest(data))
    report.add('input', input)
    report.add('split', str(split) if split is not None else None)
    report.add('measures', [measures.measure(t, state, split) for t in parse_tokens(tokens)])
    emit(report, json_fn)


"""
bell
"""


def _settings(param, text, sites, normalize):
    vals = parse_numbers(param, text, count=sites * 6)
    return nonlocality.BellSettings(np.reshape(vals, (sites, 2, 3)), normalize=normalize)


@click.command()
@click.argument('input', type=click.Path(exists=True, dir_okay=False))
@click.argument('test', type=click.Choice(['chsh', 'wwzb', 'avn', 'toner']))
@click.option('--settings', 'settings_ab', default=None,
              help='measurement directions, 6 numbers per site (two 3-vectors); defaults to optimal '
                   'CHSH settings or (x, y) on every site for wwzb')
@click.option('--settings-ac', default=None, help='AC settings for the toner test')
@click.option('--normalize', is_flag=True, help='rescale setting vectors to unit length')
@json_option
def bell(input, test, settings_ab=None, settings_ac=None, normalize=False, json_fn=None):
    """
    Evaluates a Bell test on a state file.

    chsh: correlation-tensor value M, maximal value B and the value for the given settings.
    wwzb: correlation table, the WWZB sum and the tensor condition (n qubits).
    avn: the nine-term all-versus-nothing operator on (2x2)x(2x2).
    toner: CHSH values on AB and AC of a three-qubit state and their monogamy bound.

    EXAMPLE

    entlab bell singlet.qstate chsh
    """
    state, data = read_state(input)
    rho = as_density(state)
    report = ReportDocument('bell', digest(data))
    report.add('input', input)
    report.add('test', test)
    if test == 'chsh':
        if settings_ab:
            s = _settings('settings', settings_ab, 2, normalize)
        else:
            s = nonlocality.optimal_chsh_settings(rho)
        report.add('M', nonlocality.chsh_M(rho))
        report.add('B', nonlocality.chsh_B(rho))
        report.add('settings', s)
        report.add('value', nonlocality.bell_chsh_value(rho, s))
        report.add('lhv_bound', 2.)
    elif test == 'wwzb':
        n = rho.n
        s = _settings('settings', settings_ab, n, normalize) if settings_ab else nonlocality.mermin_settings(n)
        table = nonlocality.correlation_table(rho, s)
        report.add('settings', s)
        report.add('table', table)
        report.add('check', nonlocality.wwzb_check(table, n))
        value = nonlocality.wwzb_tensor_value(nonlocality.correlation_tensor(rho))
        report.add('tensor_value', value)
        report.add('tensor_pass', value <= 1. + 1e-9)
    elif test == 'avn':
        value = nonlocality.ghz_avn_value(rho)
        report.add('value', value)
        report.add('lhv_bound', nonlocality.AVN_LHV_BOUND)
        report.add('violated', value > nonlocality.AVN_LHV_BOUND + 1e-9)
    else:
        if settings_ab:
            s_ab = _settings('settings', settings_ab, 2, normalize)
        else:
            s_ab = nonlocality.optimal_chsh_settings(partial_trace(rho, [0, 1]))
        if settings_ac:
            s_ac = _settings('settings-ac', settings_ac, 2, normalize)
        else:
            s_ac = nonlocality.optimal_chsh_settings(partial_trace(rho, [0, 2]))
        report.add('settings_ab', s_ab)
        report.add('settings_ac', s_ac)
        report.add('monogamy', nonlocality.toner_monogamy(rho, s_ab, s_ac))
    emit(report, json_fn)


"""
distill
"""


@click.group()
def distill():
    """Entanglement distillation protocols."""
    pass


@click.command()
@click.option('--f0', type=float, required=True, help='initial singlet fraction, must exceed 1/2')
@click.option('--target', type=float, default=0.99, help='target fidelity')
@click.option('--max-rounds', type=int, default=50, help='round limit')
@click.option('--exact', is_flag=True, help='simulate each round on density matrices')
@json_option
def recurrence(f0, target=0.99, max_rounds=50, exact=False, json_fn=None):
    """
    Iterates the recurrence protocol on isotropic two-qubit pairs.

    EXAMPLE

    entlab distill recurrence --f0 0.7 --target 0.99
    """
    trace = locc.distill_recurrence(f0, target, max_rounds, exact)
    report = ReportDocument('distill recurrence', digest('f0={!r} target={!r} max_rounds={:d} exact={}'.format(
        f0, target, max_rounds, exact)))
    report.add('trace', trace)
    emit(report, json_fn)


@click.command()
@click.option('--p', 'weights', required=True, help='comma separated Bell-diagonal weights, 4^m of them')
@json_option
def hashing(weights, json_fn=None):
    """
    Hashing yield of a Bell-diagonal distribution.

    EXAMPLE

    entlab distill hashing --p 0.9,0.05,0.03,0.02
    """
    p = parse_numbers('p', weights)
    report = ReportDocument('distill hashing', digest(weights))
    report.add('p', p)
    report.add('rate', locc.hashing_rate(p))
    emit(report, json_fn)


distill.add_command(recurrence)
distill.add_command(hashing)


"""
sim
"""


@click.group()
def sim():
    """Exact simulations of teleportation, dense coding and entanglement swapping."""
    pass


@click.command()
@click.option('-r', '--resource', default=None, type=click.Path(exists=True, dir_okay=False),
              help='two-qubit resource state file (default: phi+)')
@click.option('-i', '--input-state', default=None, type=click.Path(exists=True, dir_okay=False),
              help='qubit state file whose output fidelity is reported')
@click.option('--mode', default='twirl', type=click.Choice(locc.TELEPORT_MODES), help='averaging mode')
@click.option('--samples', type=int, default=None, help='Haar samples')
@click.option('--seed', type=int, default=None, help='seed for Haar sampling')
@json_option
def teleport(resource=None, input_state=None, mode='twirl', samples=None, seed=None, json_fn=None):
    """
    Teleports qubits through a two-qubit resource and reports the average fidelity.

    EXAMPLE

    entlab sim teleport --resource werner.qstate --mode axial
    """
    if resource is None:
        res, data = make_bell(3), b''
    else:
        res, data = read_state(resource)
    inp = read_state(input_state)[0] if input_state else None
    seed = glib.settings.seed if seed is None else seed
    report = ReportDocument('sim teleport', digest(data))
    report.add('resource', resource)
    report.add('teleportation', locc.simulate_teleportation(res, inp, mode, samples, seed))
    emit(report, json_fn)


@click.command()
@json_option
def dense(json_fn=None):
    """Dense coding of two bits on a shared singlet."""
    report = ReportDocument('sim dense')
    report.add('dense_coding', locc.simulate_dense_coding())
    emit(report, json_fn)


@click.command()
@json_option
def swap(json_fn=None):
    """Entanglement swapping of two phi+ pairs."""
    report = ReportDocument('sim swap')
    report.add('swapping', locc.simulate_swapping())
    emit(report, json_fn)


sim.add_command(teleport)
sim.add_command(dense)
sim.add_command(swap)


"""
channel
"""


def parse_builtin(text):
    name, _, args = text.partition(':')
    vals = parse_numbers('builtin', args) if args else []
    if name == 'identity' and len(vals) == 1:
        return locc.identity_channel(int(vals[0]))
    if name == 'phase' and len(vals) == 1:
        return locc.phase_channel(vals[0])
    if name == 'depolarizing' and len(vals) in (1, 2):
        return locc.depolarizing_channel(int(vals[0]), *vals[1:])
    raise click.BadParameter(
        "Couldn't understand builtin channel '{}', use identity:d, phase:p or depolarizing:d[,p].".format(text))


@click.group()
def channel():
    """Channel-state duality."""
    pass


@click.command()
@click.option('-k', '--kraus', default=None, type=click.Path(exists=True, dir_okay=False), help='QKRAUS file')
@click.option('-b', '--builtin', default=None, help='builtin channel: identity:d, phase:p or depolarizing:d[,p]')
@click.option('-o', '--out', default=None, type=click.Path(dir_okay=False), help='write the Choi state here')
@json_option
def choi(kraus=None, builtin=None, out=None, json_fn=None):
    """
    Builds the Choi state of a channel and reports its coherent information.

    EXAMPLE

    entlab channel choi --builtin phase:0.9 -o choi.qstate
    """
    if (kraus is None) == (builtin is None):
        raise click.BadParameter("Give exactly one of 'kraus' and 'builtin'.")
    if kraus is not None:
        ch, data = read_kraus(kraus)
    else:
        ch, data = parse_builtin(builtin), builtin
    state = locc.channel_to_state(ch)
    if out is not None:
        write_state(state, out)
    report = ReportDocument('channel choi', digest(data))
    report.add('din', ch.din)
    report.add('dout', ch.dout)
    report.add('kraus_count', len(ch))
    report.add('coherent_information', locc.state_coherent_info(state))
    report.add('out', out)
    emit(report, json_fn)


channel.add_command(choi)


"""
selftest
"""


@click.command()
@click.option('--seed', type=int, default=None, help='seed of the random draws')
@click.option('--samples', type=int, default=None, help='draws per randomized check')
@json_option
@click.pass_context
def selftest(ctx, seed=None, samples=None, json_fn=None):
    """
    Runs the seeded invariant suite and exits with 1 if any check fails.

    EXAMPLE

    entlab selftest --seed 7 --samples 1000
    """
    if samples is not None and samples < 1:
        raise click.BadParameter("'samples' should be at least 1")
    suite = SelfTest(seed, samples, echo=lambda line: click.echo(line, err=True))
    errors = suite.run()
    report = ReportDocument('selftest', digest('seed={:d} samples={:d}'.format(suite.seed, suite.samples)))
    report.add('seed', suite.seed)
    report.add('samples', suite.samples)
    report.add('errors', errors)
    report.add('pass', errors == 0)
    emit(report, json_fn)
    if errors:
        ctx.exit(1)


cli.add_command(gen)
cli.add_command(analyze)
cli.add_command(measure)
cli.add_command(bell)
cli.add_command(distill)
cli.add_command(sim)
cli.add_command(channel)
cli.add_command(selftest)


if __name__ == '__main__':
    cli()
