"""
Command-line interface for the type-2 convolution toolkit.
Provides commands for evaluating, convolving and comparing truth values and
for running the verification harness.
"""

import sys
import json
import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import click
from rich.console import Console
from rich.table import Table

from config import ConfigManager, ConfigException
from convolution import (ConvolutionException, HypothesisViolation, convolve_cuts,
                         convolve_oracle, meet_min)
from data_processor import DataProcessor, DataException, reports_frame
from harness import (CASES, AxiomReport, HarnessException, NecessityWitness,
                     NotACounterexample, VerificationHarness, laws_passed)
from interval_cuts import CutException, CutFamily, cuts_of, tv_from_cuts, uniform_grid
from logger_config import setup_logging
from order import OrderException, leq_by_cuts, leq_convolution
from tnorms import (PROBE_VERDICT, TnormException, load_tnorm, probe_conditional_cancellativity,
                    probe_continuity, zoo)
from truth_value import TruthValue, TruthValueException, as_fraction


console = Console()
logger = logging.getLogger(__name__)

EXIT_LAW_FAILURE = 1
EXIT_INPUT_ERROR = 2

INPUT_ERRORS = (ConfigException, DataException, TnormException, TruthValueException,
                CutException, OrderException, HarnessException, ConvolutionException)


class CLIException(Exception):
    """Custom exception for CLI-related errors."""
    pass


def fail(message: str, code: int = EXIT_INPUT_ERROR) -> None:
    console.print(f"[red]Error: {message}[/red]")
    sys.exit(code)


def emit_json(payload, output: Optional[str], processor: DataProcessor, label: str) -> None:
    """Write payload to output, or to stdout when no path is given."""
    if output is None:
        click.echo(json.dumps(payload, indent=2, ensure_ascii=False))
        return
    if processor.export_json(output, payload):
        console.print(f"[green]{label} written to {output}[/green]")
    else:
        fail(f"could not write {output}")


def display_reports(title: str, reports: Sequence[AxiomReport]) -> None:
    """Show one row per law with its failure count."""
    table = Table(title=title, show_header=True, header_style="bold magenta")
    table.add_column("Law", style="bold")
    table.add_column("Trials", justify="right", style="cyan")
    table.add_column("Failures", justify="right")
    table.add_column("Status")

    for row in reports_frame(reports).itertuples(index=False):
        status = "[green]pass[/green]" if row.passed else "[red]FAIL[/red]"
        table.add_row(row.law, f"{row.trials:,}", f"{row.failures:,}", status)

    console.print(table)
    for report in reports:
        if report.first_witness is not None:
            trial = report.first_witness.get('trial', '?')
            console.print(f"[dim]{report.law}: first failing trial {trial}[/dim]")


def display_cut_family(family: CutFamily, max_rows: int = 12) -> None:
    """Show a thinned view of a cut family, always including the top level."""
    table = Table(show_header=True, header_style="bold magenta")
    table.add_column("alpha", justify="right", style="cyan")
    table.add_column("lo", justify="right")
    table.add_column("hi", justify="right")

    frame = family.to_dataframe()
    step = max(1, len(frame) // max_rows)
    picked = list(range(0, len(frame), step))
    if picked[-1] != len(frame) - 1:
        picked.append(len(frame) - 1)
    for index in picked:
        row = frame.iloc[index]
        table.add_row(f"{row['alpha']:.4f}", f"{row['lo']:.6f}", f"{row['hi']:.6f}")

    console.print(table)
    if step > 1:
        console.print(f"[dim]showing {len(picked)} of {len(frame)} levels[/dim]")


def display_witness(witness: NecessityWitness, confirmed: bool) -> None:
    table = Table(show_header=True, header_style="bold magenta")
    table.add_column("Quantity", style="bold")
    table.add_column("Value", justify="right", style="cyan")
    for key, value in witness.to_dict().items():
        table.add_row(key, f"{value:.6f}")
    table.add_row("refined recheck", "confirmed" if confirmed else "[red]refuted[/red]")
    console.print(table)


def _processor(ctx) -> DataProcessor:
    return DataProcessor(ctx.obj['config']['output'])


def _load_tv(ctx, path: str) -> TruthValue:
    return _processor(ctx).load_truth_value(path)


def _harness(ctx) -> VerificationHarness:
    return VerificationHarness(ctx.obj['config'])


def _grid_option(ctx, m: Optional[int]) -> int:
    return m if m is not None else ctx.obj['config']['grid']['levels']


class InputErrorGroup(click.Group):
    """Turns the library's input errors into exit code 2."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except INPUT_ERRORS as e:
            console.print(f"[red]Error: {e}[/red]")
            logger.debug("input error", exc_info=True)
            sys.exit(EXIT_INPUT_ERROR)


@click.group(cls=InputErrorGroup)
@click.option('--config', '-c', default='t2conv.yaml',
              help='Configuration file path')
@click.option('--log-level', default=None,
              type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR']),
              help='Logging level (overrides the config file)')
@click.option('--log-file', help='Log file path, or "none"')
@click.pass_context
def cli(ctx, config, log_level, log_file):
    """Type-2 convolution toolkit - sup-convolution of fuzzy truth values."""
    ctx.ensure_object(dict)

    try:
        config_manager = ConfigManager(config)
    except ConfigException as e:
        console.print(f"[red]Error loading configuration: {e}[/red]")
        sys.exit(EXIT_INPUT_ERROR)

    settings = config_manager.get_all()
    if log_level:
        settings['logging']['level'] = log_level
    if log_file:
        settings['logging']['log_file'] = log_file
    setup_logging(settings['logging'])

    ctx.obj['config'] = settings
    ctx.obj['config_manager'] = config_manager


@cli.command('eval')
@click.option('--f', 'f_path', required=True, help='TruthValue JSON file')
@click.option('--x', 'xs', multiple=True, required=True, help='Point in [0,1]; repeatable')
@click.pass_context
def eval_command(ctx, f_path, xs):
    """Evaluate a truth value at one or more points."""
    f = _load_tv(ctx, f_path)

    table = Table(show_header=True, header_style="bold magenta")
    table.add_column("x", justify="right", style="cyan")
    table.add_column("f(x)", justify="right", style="bold")
    table.add_column("exact")
    for raw in xs:
        x = as_fraction(raw, 'x')
        value = f.eval(x)
        table.add_row(f"{float(x):g}", f"{float(value):.6f}", str(value))
    console.print(table)


@cli.command()
@click.option('--f', 'f_path', required=True, help='TruthValue JSON file')
@click.option('--m', type=int, help='Number of uniform alpha levels')
@click.option('--format', 'fmt', type=click.Choice(['json', 'csv']), default=None,
              help='Output format (defaults to output.format)')
@click.option('--output', '-o', help='Output file (stdout when omitted)')
@click.pass_context
def cuts(ctx, f_path, m, fmt, output):
    """Compute the alpha-cuts of a truth value on a uniform grid."""
    processor = _processor(ctx)
    fmt = fmt or processor.default_format
    family = cuts_of(_load_tv(ctx, f_path), uniform_grid(_grid_option(ctx, m)))

    if fmt == 'csv':
        if output is None:
            click.echo(family.to_dataframe().to_csv(index=False), nl=False)
        elif processor.export_csv(output, family.to_dataframe()):
            console.print(f"[green]Cuts written to {output}[/green]")
            display_cut_family(family)
        else:
            fail(f"could not write {output}")
        return

    emit_json(family.to_dict(), output, processor, "Cuts")
    if output is not None:
        display_cut_family(family)


@cli.command()
@click.option('--f', 'f_path', required=True, help='Left operand (TruthValue JSON)')
@click.option('--g', 'g_path', required=True, help='Right operand (TruthValue JSON)')
@click.option('--star', required=True, help='t-norm on arguments: zoo name or JSON file')
@click.option('--tri', required=True, help='t-norm on values: zoo name or JSON file')
@click.option('--m', type=int, help='Alpha levels for the cut engine')
@click.option('--engine', type=click.Choice(['cuts', 'oracle']), default='cuts',
              help='Cut engine or brute-force grid oracle')
@click.option('--n', type=int, help='Oracle grid resolution')
@click.option('--output', '-o', help='Output file (stdout when omitted)')
@click.option('--staircase-csv', help='Also write the cut-engine staircase sampled on the oracle grid')
@click.pass_context
def convolve(ctx, f_path, g_path, star, tri, m, engine, n, output, staircase_csv):
    """Convolve two truth values."""
    processor = _processor(ctx)
    f, g = _load_tv(ctx, f_path), _load_tv(ctx, g_path)
    star_spec, tri_spec = load_tnorm(star), load_tnorm(tri)
    n = n if n is not None else ctx.obj['config']['grid']['oracle_resolution']

    if engine == 'oracle':
        sampled = convolve_oracle(f, g, star_spec, tri_spec, n)
        frame = sampled.to_dataframe()
        if output is not None and Path(output).suffix.lower() == '.csv':
            if not processor.export_csv(output, frame):
                fail(f"could not write {output}")
            console.print(f"[green]Oracle samples written to {output}[/green]")
            return
        emit_json({'n': sampled.n, 'samples': frame.to_dict(orient='records')},
                  output, processor, "Oracle samples")
        return

    grid = uniform_grid(_grid_option(ctx, m))
    try:
        result = convolve_cuts(cuts_of(f, grid), cuts_of(g, grid), star_spec, tri_spec)
    except HypothesisViolation as e:
        fail(f"{e}; use --engine oracle for these operators")

    emit_json(result.to_dict(), output, processor, "Convolution cuts")
    if output is not None:
        display_cut_family(result)
    if staircase_csv:
        if processor.export_csv(staircase_csv, tv_from_cuts(result).sample(n)):
            console.print(f"[green]Staircase written to {staircase_csv}[/green]")
        else:
            fail(f"could not write {staircase_csv}")


@cli.command()
@click.option('--f', 'f_path', required=True, help='TruthValue JSON file')
@click.option('--g', 'g_path', required=True, help='TruthValue JSON file')
@click.option('--output', '-o', help='Output file (stdout when omitted)')
@click.pass_context
def meet(ctx, f_path, g_path, output):
    """Exact min/min convolution of two truth values."""
    result = meet_min(_load_tv(ctx, f_path), _load_tv(ctx, g_path))
    emit_json(result.to_dict(), output, _processor(ctx), "Meet")


@cli.command()
@click.option('--f', 'f_path', required=True, help='TruthValue JSON file')
@click.option('--g', 'g_path', required=True, help='TruthValue JSON file')
@click.option('--m', type=int, help='Uniform alpha levels before refinement')
@click.pass_context
def order(ctx, f_path, g_path, m):
    """Compare two truth values in the convolution order, both ways."""
    f, g = _load_tv(ctx, f_path), _load_tv(ctx, g_path)
    m = _grid_option(ctx, m)

    table = Table(show_header=True, header_style="bold magenta")
    table.add_column("Relation", style="bold")
    table.add_column("meet test", justify="center")
    table.add_column("cut test", justify="center")

    disagreements = 0
    for label, left, right in (("f <= g", f, g), ("g <= f", g, f)):
        by_meet = leq_convolution(left, right)
        by_cuts = leq_by_cuts(left, right, m)
        disagreements += by_meet != by_cuts
        table.add_row(label, str(by_meet), str(by_cuts))
    console.print(table)

    if disagreements:
        console.print("[red]The meet test and the cut test disagree[/red]")
        sys.exit(EXIT_LAW_FAILURE)


def _finish_reports(ctx, title: str, reports: List[AxiomReport], output: Optional[str],
                    meta: Dict) -> None:
    display_reports(title, reports)
    if output:
        if _processor(ctx).export_reports(output, reports, meta):
            console.print(f"[green]Reports written to {output}[/green]")
        else:
            fail(f"could not write {output}")
    if not laws_passed(reports):
        sys.exit(EXIT_LAW_FAILURE)


@cli.command('check-axioms')
@click.option('--star', required=True, help='t-norm on arguments')
@click.option('--tri', required=True, help='t-norm on values')
@click.option('--trials', type=int, help='Number of random trials')
@click.option('--m', type=int, help='Alpha levels')
@click.option('--n', type=int, help='Oracle resolution (fallback and associativity cross-check)')
@click.option('--seed', type=int, help='Base seed')
@click.option('--output', '-o', help='Write reports as JSON')
@click.pass_context
def check_axioms(ctx, star, tri, trials, m, n, seed, output):
    """Check the t-norm laws of the convolution on random inputs."""
    star_spec, tri_spec = load_tnorm(star), load_tnorm(tri)
    harness = _harness(ctx)
    meta = {'star': star_spec.to_dict(), 'tri': tri_spec.to_dict(),
            'seed': harness.seed if seed is None else seed}

    try:
        triple_n = None if n is None else min(n, harness.triple_resolution)
        reports = harness.check_axioms(star_spec, tri_spec, trials, m, seed, triple_n)
        title = f"Axioms for {star_spec.name} / {tri_spec.name}"
    except HypothesisViolation as e:
        console.print(f"[yellow]{e}; running the oracle closure checks instead[/yellow]")
        reports = harness.check_closure_oracle(star_spec, tri_spec, trials, n, seed)
        title = f"Oracle closure for {star_spec.name} / {tri_spec.name}"
        meta['mode'] = 'oracle'

    _finish_reports(ctx, title, reports, output, meta)


@cli.command('check-tr')
@click.option('--star', required=True, help='t-norm on arguments')
@click.option('--tri', required=True, help='t-norm on values')
@click.option('--trials', type=int, help='Number of random trials')
@click.option('--seed', type=int, help='Base seed')
@click.option('--output', '-o', help='Write reports as JSON')
@click.pass_context
def check_tr(ctx, star, tri, trials, seed, output):
    """Check the singleton, interval and boundary laws."""
    star_spec, tri_spec = load_tnorm(star), load_tnorm(tri)
    harness = _harness(ctx)
    reports = harness.check_tr_norm(star_spec, tri_spec, trials, seed)
    meta = {'star': star_spec.to_dict(), 'tri': tri_spec.to_dict(),
            'seed': harness.seed if seed is None else seed}
    _finish_reports(ctx, f"Closure laws for {star_spec.name} / {tri_spec.name}", reports,
                    output, meta)


@cli.command('demo-necessity')
@click.option('--tri', required=True, help='t-norm on values, not right-continuous at (a, b)')
@click.option('--case', type=click.Choice(CASES), default='case1_min_star')
@click.option('--a', help='Value level of f (default 1/2)')
@click.option('--b', help='Value level of g (default 1/2)')
@click.option('--u', help='Jump location of f')
@click.option('--v', help='Jump location of g (case 2)')
@click.option('--summand-lo', help='Left end of the ordinal summand (case 2)')
@click.option('--summand-hi', help='Right end of the ordinal summand (case 2)')
@click.option('--inner', type=click.Choice(['product', 'lukasiewicz']), help='Inner t-norm (case 2)')
@click.option('--n', type=int, help='Resolution of the approach and the cross-check')
@click.option('--output', '-o', help='Write the witness as JSON')
@click.pass_context
def demo_necessity(ctx, tri, case, a, b, u, v, summand_lo, summand_hi, inner, n, output):
    """Build a convolution that is not upper semicontinuous."""
    tri_spec = load_tnorm(tri)
    params = {}
    for key, raw in (('a', a), ('b', b), ('u', u), ('v', v),
                     ('summand_lo', summand_lo), ('summand_hi', summand_hi)):
        if raw is not None:
            params[key] = as_fraction(raw, key)
    if inner:
        params['inner'] = inner

    harness = _harness(ctx)
    try:
        witness = harness.necessity_demo(tri_spec, case, params, n, cross_check=False)
    except NotACounterexample as e:
        fail(str(e), EXIT_LAW_FAILURE)

    confirmed = harness.recheck_witness(witness, tri_spec, case, params, n)
    payload = {'case': case, 'tri': tri_spec.to_dict(), 'witness': witness.to_dict(),
               'confirmed': confirmed}
    emit_json(payload, output, _processor(ctx), "Witness")
    if output is not None:
        display_witness(witness, confirmed)
    if not confirmed:
        sys.exit(EXIT_LAW_FAILURE)


@cli.command('plot-data')
@click.option('--f', 'f_path', required=True, help='Left operand (TruthValue JSON)')
@click.option('--g', 'g_path', required=True, help='Right operand (TruthValue JSON)')
@click.option('--star', required=True, help='t-norm on arguments')
@click.option('--tri', required=True, help='t-norm on values')
@click.option('--m', type=int, help='Alpha levels')
@click.option('--n', type=int, help='Sampling resolution')
@click.option('--output-dir', help='Directory for the CSV files (defaults to output.directory)')
@click.pass_context
def plot_data(ctx, f_path, g_path, star, tri, m, n, output_dir):
    """Write CSV tables for plotting operands, oracle and engine output."""
    processor = _processor(ctx)
    f, g = _load_tv(ctx, f_path), _load_tv(ctx, g_path)
    star_spec, tri_spec = load_tnorm(star), load_tnorm(tri)
    n = n if n is not None else ctx.obj['config']['grid']['oracle_resolution']
    out = Path(output_dir) if output_dir else processor.output_directory

    tables = {
        'f.csv': f.sample(n),
        'g.csv': g.sample(n),
        'oracle.csv': convolve_oracle(f, g, star_spec, tri_spec, n).to_dataframe(),
    }
    try:
        grid = uniform_grid(_grid_option(ctx, m))
        family = convolve_cuts(cuts_of(f, grid), cuts_of(g, grid), star_spec, tri_spec)
        tables['cuts.csv'] = family.to_dataframe()
        tables['staircase.csv'] = tv_from_cuts(family).sample(n)
    except HypothesisViolation as e:
        console.print(f"[yellow]{e}; skipping the cut engine tables[/yellow]")

    for name, frame in tables.items():
        if not processor.export_csv(out / name, frame):
            fail(f"could not write {out / name}")
    console.print(f"[green]Wrote {len(tables)} tables to {out}[/green]")


@cli.command('zoo')
@click.option('--grid-size', type=int, help='Probe grid size')
@click.pass_context
def zoo_command(ctx, grid_size):
    """Classify the built-in t-norms with the continuity and cancellativity probes."""
    grid_size = grid_size or ctx.obj['config']['probe']['grid_size']

    table = Table(show_header=True, header_style="bold magenta")
    table.add_column("t-norm", style="bold")
    table.add_column("Declared", style="cyan")
    table.add_column("Probed")
    table.add_column("Cancellative", justify="center")

    mismatches = 0
    for spec in zoo():
        probed = probe_continuity(spec, grid_size)
        cancellative, _ = probe_conditional_cancellativity(spec, grid_size)
        expected = PROBE_VERDICT[spec.declared_class]
        style = "green" if probed == expected else "red"
        mismatches += probed != expected
        table.add_row(spec.name, spec.declared_class, f"[{style}]{probed}[/{style}]",
                      str(cancellative))
    console.print(table)
    if mismatches:
        sys.exit(EXIT_LAW_FAILURE)


if __name__ == '__main__':
    cli()
