import json
import logging
import sys
from typing import Optional

import click
from megfile import smart_open

from nestbuilder.bench import format_table, load_manifest, run_bench
from nestbuilder.engine import World
from nestbuilder.errors import ControllerError, InstanceError, TraceError
from nestbuilder.fixtures import fixture, fixture_names
from nestbuilder.instances import gen_line, gen_random_connected, gen_rough_rectangle, gen_tree, load_instance, serialize_instance
from nestbuilder.procedures import build_nest
from nestbuilder.render import FORMATS, render_trace
from nestbuilder.trace import Trace
from nestbuilder.utils import parse_switch
from nestbuilder.verify import verify_files
from nestbuilder.version import VERSION

GENERATE_FAMILIES = ('random', 'tree', 'rough-rectangle', 'line', 'fixture')
SWITCH = click.Choice(['on', 'off'])


@click.group()
@click.option('--debug', is_flag=True, help='Log debug messages to stderr.')
def cli(debug: bool):
    """Single-robot nest builder"""
    if debug:
        logging.basicConfig(level=logging.DEBUG)


def safe_cli():  # pragma: no cover
    try:
        cli()
    except (InstanceError, TraceError) as e:
        click.echo(f"\n[{type(e).__name__}] {e}", err=True)
        sys.exit(2)
    except ControllerError as e:
        click.echo(f"\n[{type(e).__name__}] {e}", err=True)
        sys.exit(3)
    except Exception as e:
        click.echo(f"\n[{type(e).__name__}] {e}", err=True)
        sys.exit(1)


def _switch(value: Optional[str]) -> Optional[bool]:
    return None if value is None else parse_switch(value)


def echo_summary(summary: dict, as_json: bool):
    if as_json:
        click.echo(json.dumps(summary, sort_keys=False))
        return
    for key, value in summary.items():
        if isinstance(value, bool):
            value = 'true' if value else 'false'
        click.echo('%s: %s' % (key, value))


@cli.command(short_help='Build a nest from an instance file.')
@click.argument('instance')
@click.option('--trace', 'trace_path', help='Write the JSON-lines trace here.')
@click.option(
    '--monitors',
    type=SWITCH,
    help='Check the field invariants at every checkpoint.')
@click.option(
    '--sensing-cost',
    type=click.IntRange(min=0),
    help='Steps charged per observation.')
@click.option('--json', 'as_json', is_flag=True, help='Print JSON.')
def run(
        instance: str, trace_path: Optional[str], monitors: Optional[str],
        sensing_cost: Optional[int], as_json: bool):
    spec = load_instance(instance)
    writer = smart_open(trace_path, 'w') if trace_path else None
    try:
        trace = Trace(keep=False, writer=writer)
        world = World(
            spec.field.full,
            spec.start,
            sensing_cost=sensing_cost,
            trace=trace)
        result = build_nest(world, _switch(monitors))
    finally:
        if writer is not None:
            writer.close()
    echo_summary(
        {
            'z': result.z,
            's': result.s,
            'steps': result.steps,
            'sensing_steps': result.sensing_steps,
            'iterations': result.iterations,
            'nest_ok': result.nest_ok,
            'invariant_violations': len(result.violations),
            'trace_hash': trace.hexdigest(),
        }, as_json)
    if not result.nest_ok or result.violations:
        sys.exit(1)


@cli.command(short_help='Replay a trace against its instance.')
@click.argument('instance')
@click.argument('trace_path')
@click.option('--json', 'as_json', is_flag=True, help='Print JSON.')
def verify(instance: str, trace_path: str, as_json: bool):
    report = verify_files(instance, trace_path)
    summary = {
        'events': report.events,
        'steps': report.steps,
        'nest_ok': report.nest_ok,
        'truncated': report.truncated,
        'violations': len(report.violations),
        'trace_hash': report.digest,
    }
    if as_json:
        summary['first_violations'] = [
            {
                'index': violation.index,
                'message': violation.message
            } for violation in report.violations[:20]
        ]
        echo_summary(summary, True)
    else:
        echo_summary(summary, False)
        for violation in report.violations[:20]:
            click.echo('event %d: %s' % violation)
    if not report.clean:
        sys.exit(1)


@cli.command(short_help='Run every instance of a manifest and tabulate steps.')
@click.argument('manifest')
@click.option('-o', '--output', help='Write the table here, default stdout.')
@click.option('--delimiter', default=',', help='Column delimiter.')
@click.option(
    '--workers', type=click.IntRange(min=1), help='Number of threads.')
@click.option(
    '--monitors',
    type=SWITCH,
    default='off',
    help='Check the field invariants, off by default.')
@click.option('-g', '--progress-bar', is_flag=True, help='Show progress bar.')
def bench(
        manifest: str, output: Optional[str], delimiter: str,
        workers: Optional[int], monitors: str, progress_bar: bool):
    cases = load_manifest(manifest)
    rows = run_bench(cases, workers, parse_switch(monitors), progress_bar)
    text = '\n'.join(format_table(rows, delimiter)) + '\n'
    if output:
        with smart_open(output, 'w') as writer:
            writer.write(text)
    else:
        click.echo(text, nl=False)


@cli.command(short_help='Write a generated or hand-drawn instance.')
@click.argument('family', type=click.Choice(GENERATE_FAMILIES))
@click.option('--z', type=click.IntRange(min=1), default=50, help='Bricks.')
@click.option('--seed', type=int, default=0, help='Random seed.')
@click.option('--s-prime', type=int, help='Rough rectangle span parameter.')
@click.option('--name', help='Fixture name: %s.' % ', '.join(fixture_names()))
@click.option('-o', '--output', help='Write the instance here, default stdout.')
def generate(
        family: str, z: int, seed: int, s_prime: Optional[int],
        name: Optional[str], output: Optional[str]):
    if family == 'random':
        spec = gen_random_connected(z, seed)
    elif family == 'tree':
        spec = gen_tree(z, seed)
    elif family == 'rough-rectangle':
        spec = gen_rough_rectangle(z, s_prime if s_prime is not None else z - 1)
    elif family == 'line':
        spec = gen_line(z)
    else:
        if not name:
            raise click.UsageError('fixture needs --name')
        spec = fixture(name)
    text = serialize_instance(spec)
    if output:
        with smart_open(output, 'w') as writer:
            writer.write(text)
    else:
        click.echo(text, nl=False)


@cli.command(short_help='Draw frames of a trace.')
@click.argument('trace_path')
@click.argument('outdir')
@click.option(
    '--every',
    type=click.IntRange(min=1),
    default=100,
    help='Draw a frame every K events.')
@click.option(
    '--format', 'fmt', type=click.Choice(FORMATS), default='ascii')
def render(trace_path: str, outdir: str, every: int, fmt: str):
    paths = render_trace(trace_path, outdir, every, fmt)
    click.echo('%d frames' % len(paths))


@cli.command(short_help='Return the nestbuilder version.')
def version():
    click.echo(VERSION)


if __name__ == '__main__':
    # Usage: python -m nestbuilder.cli
    safe_cli()  # pragma: no cover
