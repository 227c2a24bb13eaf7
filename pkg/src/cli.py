"""
Command-line interface for overlap-pack.
Uses Typer for commands and Rich for human-readable output.

Exit codes: 0 solution found (or check/validation passed), 1 no solution
(or disagreement/violations), 2 usage or format error, 3 budget exhausted.
JSON reports go to standard output; diagnostics and logs go to standard error.
"""
import json
import logging
import random
import sys
from typing import Any, Dict, List, Optional, Tuple

import typer
from pydantic import ValidationError
from rich import box
from rich.console import Console
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table

from .alpha.factory import build_predicate
from .alpha.validator import validate_well_conditioned
from .config import LOG_LEVEL, get_oracle_settings, get_solver_settings, validate_config
from .core.instance import describe_validation_error, load_json, parse_instance, serialize_instance
from .core.validation import validate_solution
from .graph.model import parse_edge_list
from .graph.pi import enumerate_pi_subgraphs
from .graph.reduction import (
    brute_force_graph_packing,
    is_graph_payload,
    parse_graph_instance,
    reduce_to_set_instance,
    serialize_graph_instance,
)
from .oracle.brute_force import brute_force_solve
from .schema.models import (
    AlphaKind,
    AlphaSpec,
    BudgetExhaustedError,
    ClusterHeads,
    GraphInstance,
    InstanceFormatError,
    OracleConfig,
    OverlapPackError,
    PiSpec,
    RunConfig,
    SetSystemInstance,
    Solution,
    SolveReport,
)
from .solver.bst import solve
from .solver.pch import solve_pch, wrap_alpha_pch
from .tools.generator import GeneratorConfig, gen, random_context

EXIT_SOLUTION = 0
EXIT_NO_SOLUTION = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

# Set up logger
logger = logging.getLogger(__name__)

# Create Typer app
app = typer.Typer(
    name="overlap-pack",
    help="Exact set and graph packing under pairwise overlap constraints",
    add_completion=False,
)

# Diagnostics and tables for humans; JSON reports are echoed to stdout
console = Console(stderr=True)
out_console = Console()

INPUT_OPTION = typer.Option(None, "--input", "-i", help="Instance file (default: standard input)")
OUTPUT_OPTION = typer.Option(None, "--output", "-o", help="Report file (default: standard output)")
FORMAT_OPTION = typer.Option("json", "--format", "-f", help="Input format: json or edges (plain edge list)")
SHARED_HEADS_OPTION = typer.Option(False, "--shared-heads", help="Allow communities to share cluster-head elements")
MIN_PI_SIZE_OPTION = typer.Option(1, "--min-pi-size", help="Smallest Π-subgraph order to enumerate")
PRETTY_OPTION = typer.Option(False, "--pretty", help="Render a table instead of JSON")
LOG_LEVEL_OPTION = typer.Option(None, "--log-level", help="Logging level: debug, info, warning, error")
R_OPTION = typer.Option(None, "--r", help="Maximum set size (edge-list input)")
K_OPTION = typer.Option(None, "--k", help="Solution size (edge-list input)")
PI_OPTION = typer.Option(None, "--pi", help='Π spec as JSON, e.g. \'{"kind": "clique"}\' (edge-list input)')
ALPHA_OPTION = typer.Option(None, "--alpha", help='Alpha spec as JSON, e.g. \'{"kind": "size", "t": 1}\'')


def configure_logging(level: Optional[str]) -> None:
    """Send log records to standard error at the requested level."""
    level_name = (level or LOG_LEVEL).upper()
    if not isinstance(logging.getLevelName(level_name), int):
        fail(f"unknown log level '{level}'")
    logging.basicConfig(
        level=level_name,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
        force=True,
    )


def validate_environment() -> bool:
    """Validate the environment configuration."""
    config_status = validate_config()
    if not config_status["valid"]:
        console.print(
            Panel(
                f"[bold red]Error:[/bold red] {config_status['message']}",
                title="Configuration Error",
                expand=False,
            )
        )
        return False
    return True


def fail(message: str, code: int = EXIT_USAGE) -> None:
    console.print(f"[bold red]Error:[/bold red] {escape(message)}")
    raise typer.Exit(code=code)


def read_input(path: Optional[str]) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise InstanceFormatError(f"cannot read {path}: {e.strerror}")


def write_report(text: str, path: Optional[str], pretty: bool = False) -> None:
    """Write the JSON report to a file or, unless a table was shown, to stdout."""
    if path:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text + "\n")
    elif not pretty:
        typer.echo(text)


def parse_json_option(raw: Optional[str], what: str) -> Optional[Dict[str, Any]]:
    if raw is None:
        return None
    try:
        return json.loads(raw)
    except json.JSONDecodeError as e:
        raise InstanceFormatError(f"--{what} is not valid JSON: {e.msg}")


def alpha_from_options(alpha_json: Optional[str], kind: Optional[str], t: Optional[float],
                       w_t: Optional[float], d_t: Optional[float], c: Optional[int],
                       pattern_class: Optional[str]) -> AlphaSpec:
    """Alpha spec from --alpha JSON, else from the individual parameter options."""
    raw = parse_json_option(alpha_json, "alpha")
    if raw is None:
        if kind is None:
            raise InstanceFormatError("an alpha spec is required: pass --alpha or --kind")
        raw = {"kind": kind, "t": _integral(t), "w_t": w_t, "d_t": d_t, "c": c, "class": pattern_class}
        raw = {key: value for key, value in raw.items() if value is not None}
    return AlphaSpec.model_validate(raw)


def _integral(value: Optional[float]) -> Optional[float]:
    if value is not None and float(value).is_integer():
        return int(value)
    return value


def load_instance(text: str, fmt: str, r: Optional[int], k: Optional[int], pi_json: Optional[str],
                  alpha_json: Optional[str], min_pi_size: int) -> Tuple[SetSystemInstance, Optional[GraphInstance]]:
    """
    Parse any supported input into a set instance.

    Returns:
        The set instance and, for graph inputs, the graph instance it was reduced from
    """
    if fmt == "edges":
        if r is None or k is None or pi_json is None or alpha_json is None:
            raise InstanceFormatError("edge-list input needs --r, --k, --pi and --alpha")
        graph = parse_edge_list(text)
        gi = parse_graph_instance({
            "vertices": graph.n,
            "edges": [list(edge) for edge in graph.edges],
            "r": r,
            "k": k,
            "pi": parse_json_option(pi_json, "pi"),
            "alpha": parse_json_option(alpha_json, "alpha"),
        })
        return reduce_to_set_instance(gi, min_pi_size=min_pi_size), gi
    if fmt != "json":
        raise InstanceFormatError(f"unknown input format '{fmt}' (expected json or edges)")
    payload = load_json(text)
    if is_graph_payload(payload):
        gi = parse_graph_instance(payload)
        return reduce_to_set_instance(gi, min_pi_size=min_pi_size), gi
    return parse_instance(payload), None


def run_solver(instance: SetSystemInstance, config: RunConfig, trace: bool = False) -> SolveReport:
    workers = get_solver_settings()["parallel_workers"]
    if instance.cluster_heads is not None:
        logger.info("Instance carries cluster heads; running the PCH search")
        return solve_pch(instance, shared_heads=config.shared_heads, node_budget=config.node_budget,
                         trace=trace, parallel=config.parallel, workers=workers)
    return solve(instance, node_budget=config.node_budget, trace=trace, parallel=config.parallel, workers=workers)


def run_oracle(instance: SetSystemInstance, gi: Optional[GraphInstance], config: RunConfig) -> Optional[List[int]]:
    """Brute-force answer as member indices of `instance`."""
    if gi is not None and gi.cluster_heads is None:
        logger.info("Running the graph-side brute force")
        packing = brute_force_graph_packing(gi, min_pi_size=config.min_pi_size)
        if packing is None:
            return None
        position = {member: i for i, member in enumerate(instance.family.members)}
        return [position[member] for member in packing]
    cfg = OracleConfig(
        max_family_size=get_oracle_settings()["max_family_size"],
        pch_mode=instance.cluster_heads is not None,
        shared_heads=config.shared_heads,
    )
    solution = brute_force_solve(instance, cfg)
    return list(solution.chosen) if solution is not None else None


def render_sets(instance: SetSystemInstance, chosen: List[int]) -> List[str]:
    names = instance.universe.names
    rendered = []
    for i in chosen:
        member = instance.family.members[i]
        rendered.append("{" + ", ".join(names[e] if names else str(e) for e in member) + "}")
    return rendered


def display_report(instance: SetSystemInstance, report: SolveReport) -> None:
    """Show a solve report as tables."""
    table = Table(show_header=True, header_style="bold", box=box.ROUNDED, title="Search")
    table.add_column("Statistic", style="cyan")
    table.add_column("Value", justify="right", style="green")
    for field in ("nodes_expanded", "max_depth", "root_children", "predicate_evaluations",
                  "seeded_by_maximal", "budget_exhausted", "head_count"):
        value = getattr(report, field)
        if value is not None:
            table.add_row(field.replace("_", " "), str(value))
    out_console.print(table)

    if report.solution is None:
        status = "budget exhausted" if report.budget_exhausted else "no solution"
        out_console.print(f"[bold yellow]{status}[/bold yellow]")
        return
    solution_table = Table(show_header=True, header_style="bold", box=box.ROUNDED, title="Solution")
    solution_table.add_column("Index", justify="right", style="cyan")
    solution_table.add_column("Set", style="green")
    for i, rendered in zip(report.solution, render_sets(instance, report.solution)):
        solution_table.add_row(str(i), rendered)
    out_console.print(solution_table)

    if report.trace:
        trace_table = Table(show_header=True, header_style="bold", box=box.SIMPLE, title="Trace")
        trace_table.add_column("Depth", justify="right")
        trace_table.add_column("Slots")
        trace_table.add_column("Greedy")
        trace_table.add_column("Alphabet")
        for entry in report.trace:
            trace_table.add_row(str(entry.depth), str(entry.slots), entry.outcome.value, str(entry.alphabet))
        out_console.print(trace_table)


def report_exit_code(report: SolveReport) -> int:
    if report.solution is not None:
        return EXIT_SOLUTION
    return EXIT_BUDGET if report.budget_exhausted else EXIT_NO_SOLUTION


@app.command("solve")
def solve_command(
    input_path: Optional[str] = INPUT_OPTION,
    output_path: Optional[str] = OUTPUT_OPTION,
    fmt: str = FORMAT_OPTION,
    node_budget: Optional[int] = typer.Option(None, "--node-budget", help="Maximum search nodes (default: tree-size bound)"),
    shared_heads: bool = SHARED_HEADS_OPTION,
    min_pi_size: int = MIN_PI_SIZE_OPTION,
    parallel: bool = typer.Option(False, "--parallel", help="Explore root subtrees concurrently"),
    trace: bool = typer.Option(False, "--trace", help="Include every expanded node in the report"),
    pretty: bool = PRETTY_OPTION,
    r: Optional[int] = R_OPTION,
    k: Optional[int] = K_OPTION,
    pi: Optional[str] = PI_OPTION,
    alpha: Optional[str] = ALPHA_OPTION,
    log_level: Optional[str] = LOG_LEVEL_OPTION,
):
    """Solve an instance with the bounded search tree."""
    configure_logging(log_level)
    if not validate_environment():
        raise typer.Exit(code=EXIT_USAGE)
    try:
        config = RunConfig(command="solve", input_path=input_path, output_path=output_path,
                           node_budget=node_budget, shared_heads=shared_heads, min_pi_size=min_pi_size,
                           parallel=parallel, pretty=pretty)
        instance, _ = load_instance(read_input(input_path), fmt, r, k, pi, alpha, config.min_pi_size)
        report = run_solver(instance, config, trace=trace)
    except ValidationError as e:
        fail(describe_validation_error(e))
    except OverlapPackError as e:
        fail(e.error)

    if pretty:
        display_report(instance, report)
    write_report(report.to_json(), output_path, pretty)
    raise typer.Exit(code=report_exit_code(report))


@app.command("oracle")
def oracle_command(
    input_path: Optional[str] = INPUT_OPTION,
    output_path: Optional[str] = OUTPUT_OPTION,
    fmt: str = FORMAT_OPTION,
    shared_heads: bool = SHARED_HEADS_OPTION,
    min_pi_size: int = MIN_PI_SIZE_OPTION,
    r: Optional[int] = R_OPTION,
    k: Optional[int] = K_OPTION,
    pi: Optional[str] = PI_OPTION,
    alpha: Optional[str] = ALPHA_OPTION,
    log_level: Optional[str] = LOG_LEVEL_OPTION,
):
    """Solve an instance by brute force."""
    configure_logging(log_level)
    try:
        config = RunConfig(command="oracle", input_path=input_path, output_path=output_path,
                           shared_heads=shared_heads, min_pi_size=min_pi_size)
        instance, gi = load_instance(read_input(input_path), fmt, r, k, pi, alpha, config.min_pi_size)
        solution = run_oracle(instance, gi, config)
    except BudgetExhaustedError as e:
        fail(e.error, EXIT_BUDGET)
    except ValidationError as e:
        fail(describe_validation_error(e))
    except OverlapPackError as e:
        fail(e.error)

    write_report(json.dumps({"solution": solution}), output_path)
    raise typer.Exit(code=EXIT_SOLUTION if solution is not None else EXIT_NO_SOLUTION)


@app.command("check")
def check_command(
    input_path: Optional[str] = INPUT_OPTION,
    output_path: Optional[str] = OUTPUT_OPTION,
    fmt: str = FORMAT_OPTION,
    node_budget: Optional[int] = typer.Option(None, "--node-budget", help="Maximum search nodes for the solver"),
    shared_heads: bool = SHARED_HEADS_OPTION,
    min_pi_size: int = MIN_PI_SIZE_OPTION,
    r: Optional[int] = R_OPTION,
    k: Optional[int] = K_OPTION,
    pi: Optional[str] = PI_OPTION,
    alpha: Optional[str] = ALPHA_OPTION,
    log_level: Optional[str] = LOG_LEVEL_OPTION,
):
    """Run solver and oracle and compare whether each finds a solution."""
    configure_logging(log_level)
    try:
        config = RunConfig(command="check", input_path=input_path, output_path=output_path,
                           node_budget=node_budget, shared_heads=shared_heads, min_pi_size=min_pi_size)
        instance, gi = load_instance(read_input(input_path), fmt, r, k, pi, alpha, config.min_pi_size)
        report = run_solver(instance, config)
        oracle_solution = run_oracle(instance, gi, config)
    except BudgetExhaustedError as e:
        fail(e.error, EXIT_BUDGET)
    except ValidationError as e:
        fail(describe_validation_error(e))
    except OverlapPackError as e:
        fail(e.error)

    if report.budget_exhausted:
        fail("solver node budget exhausted; cannot compare", EXIT_BUDGET)
    solution_valid = None
    if report.solution is not None:
        solution_valid = validate_solution(
            instance, Solution(chosen=tuple(report.solution)), shared_heads=shared_heads
        ).valid
    agree = (report.solution is not None) == (oracle_solution is not None) and solution_valid is not False
    result = {
        "agree": agree,
        "solver_solution": report.solution,
        "oracle_solution": oracle_solution,
        "solution_valid": solution_valid,
        "nodes_expanded": report.nodes_expanded,
    }
    if not agree:
        console.print("[bold red]Solver and oracle disagree[/bold red]")
    write_report(json.dumps(result), output_path)
    raise typer.Exit(code=EXIT_SOLUTION if agree else EXIT_NO_SOLUTION)


@app.command("validate-alpha")
def validate_alpha_command(
    kind: Optional[str] = typer.Option(None, "--kind", help="Alpha kind to check"),
    t: Optional[float] = typer.Option(None, "--t", help="size/density/measure threshold t"),
    w_t: Optional[float] = typer.Option(None, "--w-t", help="weight threshold"),
    d_t: Optional[float] = typer.Option(None, "--d-t", help="metric/distance threshold"),
    c: Optional[int] = typer.Option(None, "--c", help="dense_overlap/density edge parameter"),
    pattern_class: Optional[str] = typer.Option(None, "--class", help="pattern class: clique, edgeless, forbidden_induced"),
    alpha: Optional[str] = ALPHA_OPTION,
    n_max: int = typer.Option(6, "--n-max", help="Universe size to enumerate"),
    r: int = typer.Option(4, "--r", help="Maximum subset size"),
    draws: int = typer.Option(1, "--draws", help="Number of random annotation draws"),
    seed: int = typer.Option(0, "--seed", help="Seed for the annotation draws"),
    heads: int = typer.Option(0, "--heads", help="Also wrap with this many random single-element cluster heads"),
    output_path: Optional[str] = OUTPUT_OPTION,
    log_level: Optional[str] = LOG_LEVEL_OPTION,
):
    """Exhaustively check that a predicate is well-conditioned."""
    configure_logging(log_level)
    rng = random.Random(seed)
    totals = {"checked_pairs": 0, "hereditary_violations": 0, "condition_ii_violations": 0}
    witnesses: List[Dict[str, Any]] = []
    try:
        spec = alpha_from_options(alpha, kind, t, w_t, d_t, c, pattern_class)
        for _ in range(draws):
            filled, universe, graph = random_context(rng, spec, n_max)
            pred = build_predicate(filled, universe, graph)
            if heads:
                chosen = sorted(rng.sample(range(n_max), min(heads, n_max)))
                pred = wrap_alpha_pch(pred, ClusterHeads(heads=tuple((h,) for h in chosen)))
            report = validate_well_conditioned(pred, n_max, r)
            totals["checked_pairs"] += report.checked_pairs
            totals["hereditary_violations"] += len(report.hereditary_violations) + report.hereditary_violations_overflow
            totals["condition_ii_violations"] += len(report.condition_ii_violations) + report.condition_ii_violations_overflow
            witnesses.extend(w.model_dump(mode="json") for w in report.hereditary_violations[:3])
            witnesses.extend(w.model_dump(mode="json") for w in report.condition_ii_violations[:3])
    except ValidationError as e:
        fail(describe_validation_error(e))
    except OverlapPackError as e:
        fail(e.error)

    passed = totals["hereditary_violations"] == 0 and totals["condition_ii_violations"] == 0
    result = {"kind": spec.kind.value, "n_max": n_max, "r": r, "draws": draws, "passed": passed, **totals}
    if witnesses:
        result["witnesses"] = witnesses[:10]
    write_report(json.dumps(result), output_path)
    raise typer.Exit(code=EXIT_SOLUTION if passed else EXIT_NO_SOLUTION)


@app.command("enumerate-pi")
def enumerate_pi_command(
    input_path: Optional[str] = INPUT_OPTION,
    output_path: Optional[str] = OUTPUT_OPTION,
    fmt: str = FORMAT_OPTION,
    r: Optional[int] = R_OPTION,
    pi: Optional[str] = PI_OPTION,
    min_pi_size: int = MIN_PI_SIZE_OPTION,
    log_level: Optional[str] = LOG_LEVEL_OPTION,
):
    """List every induced Π-subgraph of a graph."""
    configure_logging(log_level)
    try:
        text = read_input(input_path)
        if fmt == "edges":
            if r is None or pi is None:
                raise InstanceFormatError("edge-list input needs --r and --pi")
            graph = parse_edge_list(text)
            pi_spec = PiSpec.model_validate(parse_json_option(pi, "pi"))
        else:
            payload = load_json(text)
            if not is_graph_payload(payload):
                raise InstanceFormatError("enumerate-pi needs a graph instance")
            gi = parse_graph_instance(payload)
            graph, pi_spec = gi.graph, gi.pi
            r = r or gi.r
        family = enumerate_pi_subgraphs(graph, pi_spec, r, min_size=min_pi_size)
    except ValidationError as e:
        fail(describe_validation_error(e))
    except OverlapPackError as e:
        fail(e.error)

    result = {"count": len(family), "sets": [list(member) for member in family.members]}
    write_report(json.dumps(result), output_path)


@app.command("gen")
def gen_command(
    seed: int = typer.Option(..., "--seed", help="Random seed (required for reproducibility)"),
    graph: bool = typer.Option(False, "--graph", help="Generate a graph instance"),
    n: int = typer.Option(10, "--n", help="Universe size / vertex count"),
    m: int = typer.Option(15, "--m", help="Number of sets"),
    r: int = typer.Option(3, "--r", help="Maximum set size"),
    k: int = typer.Option(2, "--k", help="Solution size"),
    kind: Optional[str] = typer.Option(None, "--kind", help="Alpha kind"),
    t: Optional[float] = typer.Option(None, "--t"),
    w_t: Optional[float] = typer.Option(None, "--w-t"),
    d_t: Optional[float] = typer.Option(None, "--d-t"),
    c: Optional[int] = typer.Option(None, "--c"),
    pattern_class: Optional[str] = typer.Option(None, "--class"),
    alpha: Optional[str] = ALPHA_OPTION,
    pi: Optional[str] = PI_OPTION,
    edge_probability: float = typer.Option(0.3, "--edge-probability"),
    with_edges: bool = typer.Option(False, "--with-edges", help="Attach a random graph to a set instance"),
    heads: int = typer.Option(0, "--heads", help="Number of cluster heads"),
    head_size: int = typer.Option(1, "--head-size"),
    output_path: Optional[str] = OUTPUT_OPTION,
    log_level: Optional[str] = LOG_LEVEL_OPTION,
):
    """Generate a reproducible random instance."""
    configure_logging(log_level)
    try:
        RunConfig(command="gen", output_path=output_path, seed=seed)
        if alpha is None and kind is None:
            kind, t = AlphaKind.SIZE.value, 1 if t is None else t
        spec = alpha_from_options(alpha, kind, t, w_t, d_t, c, pattern_class)
        config = GeneratorConfig(
            graph=graph, n=n, m=m, r=r, k=k, alpha=spec,
            pi=PiSpec.model_validate(parse_json_option(pi, "pi")) if pi else None,
            edge_probability=edge_probability, with_edges=with_edges, heads=heads, head_size=head_size,
        )
        instance = gen(config, seed)
    except ValidationError as e:
        fail(describe_validation_error(e))
    except OverlapPackError as e:
        fail(e.error)

    if isinstance(instance, GraphInstance):
        write_report(serialize_graph_instance(instance), output_path)
    else:
        write_report(serialize_instance(instance), output_path)


if __name__ == "__main__":
    app()
