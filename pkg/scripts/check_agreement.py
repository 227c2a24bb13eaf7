"""
Script to cross-check the solver against the brute-force oracle on generated instances.

Usage:
    python scripts/check_agreement.py --seeds 200 --n 10 --m 18 --r 3 --k 3 --alpha '{"kind": "size", "t": 1}'
"""
import json
import logging
from typing import List, Optional

import typer
from rich.console import Console
from rich.progress import track

from src.core.validation import validate_solution
from src.oracle.brute_force import brute_force_solve
from src.schema.models import AlphaSpec, OverlapPackError
from src.solver.bounds import tree_size_bound
from src.solver.bst import solve
from src.tools.generator import GeneratorConfig, gen

# Set up logging
logging.basicConfig(level=logging.WARNING)
logger = logging.getLogger(__name__)

console = Console()


def check_seed(config: GeneratorConfig, seed: int) -> Optional[str]:
    """Return a description of the first mismatch for this seed, or None."""
    instance = gen(config, seed)
    report = solve(instance, node_budget=tree_size_bound(config.k, config.r))
    oracle = brute_force_solve(instance)
    if report.budget_exhausted:
        return f"seed {seed}: budget exhausted within the tree-size bound"
    if (report.solution is None) != (oracle is None):
        return f"seed {seed}: solver={report.solution} oracle={oracle.chosen if oracle else None}"
    if report.outcome is not None and not validate_solution(instance, report.outcome).valid:
        return f"seed {seed}: solver returned an invalid solution {report.solution}"
    return None


def main(
    seeds: int = typer.Option(100, "--seeds", help="Number of seeds to try"),
    start: int = typer.Option(0, "--start", help="First seed"),
    n: int = typer.Option(10, "--n"),
    m: int = typer.Option(15, "--m"),
    r: int = typer.Option(3, "--r"),
    k: int = typer.Option(2, "--k"),
    alpha: str = typer.Option('{"kind": "size", "t": 1}', "--alpha", help="Alpha spec as JSON"),
):
    """Run the solver and the oracle on consecutive seeds and report disagreements."""
    try:
        config = GeneratorConfig(n=n, m=m, r=r, k=k, alpha=AlphaSpec.model_validate(json.loads(alpha)))
    except (ValueError, OverlapPackError) as e:
        console.print(f"[bold red]Invalid parameters:[/bold red] {e}")
        raise typer.Exit(code=2)

    mismatches: List[str] = []
    for seed in track(range(start, start + seeds), description="Checking seeds..."):
        try:
            problem = check_seed(config, seed)
        except OverlapPackError as e:
            problem = f"seed {seed}: {e.error}"
        if problem:
            logger.error(problem)
            mismatches.append(problem)

    if mismatches:
        console.print(f"[bold red]{len(mismatches)} of {seeds} seeds disagree[/bold red]")
        for problem in mismatches[:20]:
            console.print(f"  {problem}")
        raise typer.Exit(code=1)
    console.print(f"[bold green]All {seeds} seeds agree[/bold green]")


if __name__ == "__main__":
    typer.run(main)
