from dataclasses import asdict
from functools import wraps

import click
from pydantic import ValidationError

from algebra.dot import lattice_dot, ret_poset_dot
from algebra.lattice import Lattice
from config import CONFIG_FILE, Config, get_config
from logger import get_logger, setup_logging
from models.grid_shape import GridShape
from render import (
    echo_dot,
    echo_json,
    format_map,
    format_partition,
    mask_json,
    print_line,
    print_table,
    yes_no,
)
from services.absorption_service import AbsorptionService
from services.catalog_service import CatalogService
from services.config_service import ConfigService
from services.congruence_service import CongruenceService
from services.grid_service import GridService
from services.lattice_service import LatticeService
from services.retract_service import RetractService
from sources import LoadedLattice

logger = get_logger(__name__)

TEXT_JSON = click.Choice(["text", "json"])
TEXT_JSON_DOT = click.Choice(["text", "json", "dot"])


class DataError(click.ClickException):
    """Invalid input data or a computation refused by a cap."""

    exit_code = 2


class Verdict(Exception):
    """A computed verdict that should end the command with exit status 1."""


def lattice_options(command):
    """Add the ``--fixture`` / ``--grid`` / ``--file`` choice of lattice."""
    command = click.option(
        "--file",
        "file_path",
        type=click.Path(dir_okay=False),
        default=None,
        help="Lattice JSON file",
    )(command)
    command = click.option(
        "--grid",
        nargs=2,
        type=int,
        default=None,
        metavar="M N",
        help="Product of chains C_M x C_N",
    )(command)
    command = click.option(
        "--fixture", default=None, help="Built-in lattice, e.g. l12, m3, chain(4), grid(2,3)"
    )(command)
    return command


def verdict_exit(command):
    """Turn a raised :class:`Verdict` into exit status 1 after the report is printed."""

    @wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except Verdict as e:
            if str(e):
                logger.error(str(e))
            click.get_current_context().exit(1)

    return wrapper


def _config(ctx: click.Context) -> Config:
    return ctx.obj["config"]


def _load(ctx: click.Context, fixture, grid, file_path) -> LoadedLattice:
    given = [
        (name, ref)
        for name, ref in (
            ("fixture", fixture),
            ("grid", " ".join(map(str, grid)) if grid else None),
            ("file", file_path),
        )
        if ref is not None
    ]
    if len(given) != 1:
        raise click.UsageError("Give exactly one of --fixture, --grid or --file.")
    source_name, ref = given[0]
    result = LatticeService(_config(ctx)).load(source_name, ref)
    if not result.success:
        raise DataError(result.error)
    return result.loaded


def _shape(m: int, n: int) -> GridShape:
    try:
        return GridShape(m=m, n=n)
    except ValidationError as e:
        raise DataError(f"Invalid grid shape {m} x {n}: {e.errors()[0]['msg']}") from e


def _masks_as_labels(L: Lattice, masks) -> list[str]:
    return [L.format_mask(mask) for mask in masks]


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Enable verbose logging")
@click.option(
    "--max-n", type=int, default=None, help="Size cap for brute-force retract computations"
)
@click.option("--no-cache", is_flag=True, help="Do not read or write the enumeration cache")
@click.pass_context
def main(ctx, verbose, max_n, no_cache):
    """retractlab - retracts, retractions and congruences of finite lattices"""
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose
    setup_logging(verbose=verbose)
    try:
        ctx.obj["config"] = get_config(max_n)
    except ValidationError as e:
        raise DataError(f"Invalid configuration: {e.errors()[0]['msg']}") from e
    ctx.obj["use_cache"] = not no_cache


@main.command("validate")
@lattice_options
@click.option("--format", "fmt", type=TEXT_JSON, default="text")
@click.pass_context
def validate(ctx, fixture, grid, file_path, fmt):
    """
    Check that the input is a lattice and print its cover relation
    """
    loaded = _load(ctx, fixture, grid, file_path)
    L = loaded.lattice
    if fmt == "json":
        echo_json({"name": loaded.name, **L.to_spec().model_dump()})
        return
    print_line(f"{loaded.name}: lattice with {L.n} elements and {len(L.covers)} covers")
    for lo, hi in L.covers:
        print_line(f"  {L.label(lo)} < {L.label(hi)}")


@main.command("flags")
@lattice_options
@click.option("--format", "fmt", type=TEXT_JSON, default="text")
@click.pass_context
def flags(ctx, fixture, grid, file_path, fmt):
    """
    Report whether the lattice is a chain, distributive or modular
    """
    loaded = _load(ctx, fixture, grid, file_path)
    result = LatticeService(_config(ctx)).flags(loaded.lattice)
    if fmt == "json":
        echo_json({"name": loaded.name, "n": loaded.lattice.n, **asdict(result.flags)})
        return
    print_table(
        loaded.name,
        ["property", "value"],
        [
            ("chain", yes_no(result.flags.is_chain)),
            ("distributive", yes_no(result.flags.is_distributive)),
            ("modular", yes_no(result.flags.is_modular)),
        ],
    )
    if not result.birkhoff_agrees:
        logger.error("Join-irreducible distributivity test disagrees with the triple law")


@main.command("con")
@lattice_options
@click.option("--format", "fmt", type=TEXT_JSON, default="text")
@click.pass_context
def con(ctx, fixture, grid, file_path, fmt):
    """
    List the congruences of a lattice
    """
    loaded = _load(ctx, fixture, grid, file_path)
    L = loaded.lattice
    result = CongruenceService(_config(ctx)).congruences(L)
    if not result.success:
        raise DataError(result.error)
    if fmt == "json":
        echo_json(
            {
                "name": loaded.name,
                "count": len(result.congruences),
                "is_boolean": result.is_boolean,
                "congruences": [P.to_json() for P in result.congruences],
            }
        )
        return
    print_line(f"{loaded.name}: {len(result.congruences)} congruences")
    for P in result.congruences:
        print_line(f"  {format_partition(L, P)}")
    print_line(f"Con is boolean: {yes_no(result.is_boolean)}")


@main.command("quo")
@lattice_options
@click.option("--format", "fmt", type=TEXT_JSON, default="text")
@click.pass_context
def quo(ctx, fixture, grid, file_path, fmt):
    """
    List the compatible quasiorders of a lattice
    """
    loaded = _load(ctx, fixture, grid, file_path)
    L = loaded.lattice
    result = CongruenceService(_config(ctx)).quasiorders(L)
    if not result.success:
        raise DataError(result.error)
    if fmt == "json":
        echo_json(
            {
                "name": loaded.name,
                "count": len(result.relations),
                "quasiorders": [[list(pair) for pair in R.pairs()] for R in result.relations],
            }
        )
        return
    print_line(f"{loaded.name}: {len(result.relations)} compatible quasiorders")
    for R in result.relations:
        strict = [(x, y) for x, y in R.pairs() if x != y]
        print_line("  " + (", ".join(f"{L.label(x)}<={L.label(y)}" for x, y in strict) or "="))


@main.command("retractions")
@lattice_options
@click.option("--format", "fmt", type=TEXT_JSON, default="text")
@click.pass_context
def retractions(ctx, fixture, grid, file_path, fmt):
    """
    List every retraction (idempotent endomorphism) of a lattice
    """
    loaded = _load(ctx, fixture, grid, file_path)
    L = loaded.lattice
    result = RetractService(_config(ctx)).retractions(L)
    if not result.success:
        raise DataError(result.error)
    if fmt == "json":
        echo_json(
            {
                "name": loaded.name,
                "count": len(result.retractions),
                "retractions": [f.to_json() for f in result.retractions],
            }
        )
        return
    print_line(f"{loaded.name}: {len(result.retractions)} retractions")
    for f in result.retractions:
        print_line(f"  {format_map(L, f.image_of)}")


@main.command("retracts")
@lattice_options
@click.option(
    "--mode",
    type=click.Choice(["bruteforce", "transversal", "both"]),
    default="bruteforce",
    help="Compute images of retractions, congruence transversals, or both and compare",
)
@click.option("--check-lattice", is_flag=True, help="Decide whether Ret L is a lattice")
@click.option("--format", "fmt", type=TEXT_JSON_DOT, default="text")
@click.pass_context
@verdict_exit
def retracts(ctx, fixture, grid, file_path, mode, check_lattice, fmt):
    """
    List the retracts of a lattice
    """
    if fmt == "dot" and not check_lattice:
        raise click.UsageError("--format dot needs --check-lattice")
    loaded = _load(ctx, fixture, grid, file_path)
    L = loaded.lattice
    result = RetractService(_config(ctx)).retracts(L, mode, check_lattice)
    if not result.success:
        raise DataError(result.error)
    poset = result.poset

    if fmt == "dot":
        echo_dot(ret_poset_dot(poset, f"Ret {loaded.name}"))
    elif fmt == "json":
        payload = {
            "name": loaded.name,
            "mode": mode,
            "count": len(result.retracts),
            "retracts": [mask_json(S) for S in result.retracts],
        }
        if result.agreement is not None:
            payload["agreement"] = result.agreement
        if poset is not None:
            payload["ret_is_lattice"] = poset.is_lattice
            payload["witness"] = [mask_json(S) for S in poset.witness] if poset.witness else None
        echo_json(payload)
    else:
        print_line(f"{loaded.name}: {len(result.retracts)} retracts")
        for S in result.retracts:
            print_line(f"  {L.format_mask(S)}")
        if result.agreement is not None:
            print_line(f"bruteforce vs transversal: {'ok' if result.agreement else 'MISMATCH'}")
        if poset is not None:
            print_line(f"Ret L is a lattice: {yes_no(poset.is_lattice)}")
            if poset.witness:
                s1, s2 = _masks_as_labels(L, poset.witness)
                print_line(f"witness: {s1} and {s2}")

    if result.agreement is False:
        raise Verdict("Brute force and transversal retracts differ")
    if poset is not None and not poset.is_lattice:
        raise Verdict()


@main.command("rcon")
@lattice_options
@click.option("--format", "fmt", type=TEXT_JSON, default="text")
@click.pass_context
def rcon(ctx, fixture, grid, file_path, fmt):
    """
    List the retraction congruences (kernels of retractions) of a lattice
    """
    loaded = _load(ctx, fixture, grid, file_path)
    L = loaded.lattice
    result = RetractService(_config(ctx)).rcon(L)
    if not result.success:
        raise DataError(result.error)
    if fmt == "json":
        echo_json(
            {
                "name": loaded.name,
                "count": len(result.kernels),
                "congruence_count": result.congruence_count,
                "equals_con": result.equals_con,
                "kernels": [
                    {"blocks": theta.to_json(), "transversal": mask_json(result.witnesses[theta])}
                    for theta in result.kernels
                ],
            }
        )
        return
    print_line(
        f"{loaded.name}: {len(result.kernels)} of {result.congruence_count} "
        "congruences are retraction congruences"
    )
    for theta in result.kernels:
        witness = L.format_mask(result.witnesses[theta])
        print_line(f"  {format_partition(L, theta)}  transversal {witness}")


@main.command("grid-count")
@click.option("-m", "m", type=int, required=True, help="Length of the first chain")
@click.option("-n", "n", type=int, required=True, help="Length of the second chain")
@click.option("--digits", type=int, default=None, help="Also print scientific roundings")
@click.option("--format", "fmt", type=TEXT_JSON, default="text")
@click.pass_context
def grid_count(ctx, m, n, digits, fmt):
    """
    Count the retracts of C_m x C_n exactly
    """
    if digits is not None and digits < 1:
        raise click.BadParameter("must be at least 1", param_hint="--digits")
    result = GridService(_config(ctx)).count(_shape(m, n), digits)
    if not result.success:
        raise DataError(result.error)
    report = result.report
    if fmt == "json":
        echo_json(report.model_dump(exclude_none=True))
        return
    rows = [
        ("straight subsets (with empty set)", report.sts, report.sts_scientific),
        ("injective skew chains", report.isc, report.isc_scientific),
        ("|Ret G|", report.total, report.total_scientific),
    ]
    print_line(f"C_{m} x C_{n}")
    for name, exact, rounded in rows:
        print_line(f"{name}: {exact}" + (f" ~ {rounded}" if rounded else ""))


@main.command("grid-retracts")
@click.option("-m", "m", type=int, required=True)
@click.option("-n", "n", type=int, required=True)
@click.option("--format", "fmt", type=TEXT_JSON, default="text")
@click.pass_context
@verdict_exit
def grid_retracts_command(ctx, m, n, fmt):
    """
    List the retracts of C_m x C_n from the structure theorem
    """
    shape = _shape(m, n)
    result = GridService(_config(ctx)).retracts(shape)
    if not result.success:
        raise DataError(result.error)
    if fmt == "json":
        echo_json(
            {
                "m": m,
                "n": n,
                "count": len(result.retracts),
                "total_with_empty": len(result.retracts) + 1,
                "matches_formula": result.matches_formula,
                "retracts": [
                    [list(shape.point(x)) for x in mask_json(S)] for S in result.retracts
                ],
            }
        )
    else:
        print_line(f"C_{m} x C_{n}: {len(result.retracts)} retracts")
        for S in result.retracts:
            print_line("  {" + ", ".join(str(shape.point(x)) for x in mask_json(S)) + "}")
    if not result.matches_formula:
        raise Verdict(
            f"Enumerated {len(result.retracts) + 1} members of Ret G, formula gives "
            f"{result.expected_total}"
        )


@main.command("grid-chains")
@click.option("-m", "m", type=int, required=True)
@click.option("-n", "n", type=int, required=True)
@click.option("--verify", is_flag=True, help="Check maximality against brute-force Ret G")
@click.option("--format", "fmt", type=TEXT_JSON, default="text")
@click.pass_context
@verdict_exit
def grid_chains(ctx, m, n, verify, fmt):
    """
    Build the two maximal chains H1 and H2 of Ret(C_m x C_n)
    """
    shape = _shape(m, n)
    result = GridService(_config(ctx)).chains(shape, verify)
    if not result.success:
        raise DataError(result.error)
    chains = {"H1": result.h1, "H2": result.h2}
    if fmt == "json":
        payload = {
            name: [[list(shape.point(x)) for x in mask_json(S)] for S in chain]
            for name, chain in chains.items()
        }
        payload.update({"m": m, "n": n, "verified": result.verified})
        echo_json(payload)
    else:
        for name, chain in chains.items():
            print_line(f"{name} ({len(chain)} members):")
            for S in chain:
                print_line("  {" + ", ".join(str(shape.point(x)) for x in mask_json(S)) + "}")
            if result.verified is not None:
                print_line(f"  maximal in Ret G: {yes_no(result.verified[name])}")
    if result.verified is not None and not all(result.verified.values()):
        raise Verdict("A constructed chain is not maximal in Ret G")


@main.command("absorption")
@lattice_options
@click.option(
    "--property",
    "prop",
    required=True,
    help="rc, glusqap, glusqap-outer or a property JSON file",
)
@click.option("--retract", default=None, help="Check one retract, e.g. '0,a,1'")
@click.option("--format", "fmt", type=TEXT_JSON, default="text")
@click.pass_context
@verdict_exit
def absorption(ctx, fixture, grid, file_path, prop, retract, fmt):
    """
    Check an extended absorption property on the retracts of a lattice
    """
    loaded = _load(ctx, fixture, grid, file_path)
    L = loaded.lattice
    S = None
    if retract is not None:
        refs = [part.strip() for part in retract.split(",") if part.strip()]
        try:
            S = L.mask(refs)
        except (IndexError, ValueError) as e:
            raise DataError(str(e)) from e
    result = AbsorptionService(_config(ctx)).check(L, prop, S)
    if not result.success:
        raise DataError(result.error)
    verdict = result.verdict
    cex = verdict.counterexample
    if fmt == "json":
        payload = {
            "name": loaded.name,
            "property": result.prop.name,
            "holds": verdict.holds,
            "retracts_checked": verdict.retracts_checked,
            "embeddings_checked": verdict.embeddings_checked,
            "counterexample": None,
        }
        if cex is not None:
            payload["counterexample"] = {
                "retract": mask_json(cex.retract),
                "embedding": list(cex.embedding),
                "star": cex.star,
            }
        echo_json(payload)
    else:
        print_line(
            f"{result.prop.name} on {loaded.name}: {'holds' if verdict.holds else 'fails'} "
            f"({verdict.retracts_checked} retracts, {verdict.embeddings_checked} embeddings)"
        )
        if cex is not None:
            K = result.prop.K
            mapping = ", ".join(f"{K.label(k)}->{L.label(x)}" for k, x in enumerate(cex.embedding))
            missing = L.label(cex.embedding[cex.star])
            print_line(f"retract {L.format_mask(cex.retract)} misses {missing}")
            print_line(f"embedding {mapping}")
    if not verdict.holds:
        raise Verdict()


@main.command("enumerate")
@click.option("-n", "n", type=int, required=True, help="Number of elements")
@click.option("--format", "fmt", type=TEXT_JSON, default="text")
@click.pass_context
def enumerate_command(ctx, n, fmt):
    """
    Enumerate the lattices with n elements up to isomorphism
    """
    service = CatalogService(_config(ctx), use_cache=ctx.obj["use_cache"])
    result = service.enumerate(n)
    if not result.success:
        raise DataError(result.error)
    if fmt == "json":
        echo_json(
            {
                "n": n,
                "count": len(result.lattices),
                "lattices": [L.to_spec().model_dump() for L in result.lattices],
            }
        )
        return
    print_line(f"{len(result.lattices)} lattices with {n} elements")
    for i, L in enumerate(result.lattices):
        print_line(f"  #{i}: " + " ".join(f"{lo}<{hi}" for lo, hi in L.covers))


@main.command("search-l8")
@click.option("--top", type=int, default=10, help="Number of ranked partial matches to keep")
@click.option("--format", "fmt", type=TEXT_JSON, default="text")
@click.pass_context
def search_l8(ctx, top, fmt):
    """
    Search the 8-element lattices for the RCon != Con example
    """
    service = CatalogService(_config(ctx), use_cache=ctx.obj["use_cache"])
    result = service.search_l8(top)
    if not result.success:
        raise DataError(result.error)
    report = result.report
    if fmt == "json":
        echo_json(report.model_dump())
        return
    print_line(
        f"Scanned {report.lattices_scanned} lattices: {len(report.full_matches)} full matches"
    )
    ranked = report.full_matches or report.ranked_partial_matches
    if not ranked:
        return
    names = list(ranked[0].constraints)
    print_table(
        "full matches" if report.full_matches else "best partial matches",
        ["covers", "pair", "|Con|", "|RCon|", *names],
        [
            (
                " ".join(f"{lo}<{hi}" for lo, hi in entry.lattice.covers),
                entry.pair,
                entry.congruence_count,
                entry.retraction_congruence_count,
                *(yes_no(entry.constraints[name]) for name in names),
            )
            for entry in ranked
        ],
    )


@main.command("boolean-minus")
@click.option("-k", "k", type=int, required=True, help="Exponent of the boolean lattice B_k")
@click.option("--which", type=click.Choice(["atom", "coatom"]), default="coatom")
@click.option("--format", "fmt", type=TEXT_JSON, default="text")
@click.pass_context
def boolean_minus(ctx, k, which, fmt):
    """
    Remove one atom or coatom from B_k and test distributivity
    """
    result = CatalogService(_config(ctx), use_cache=False).boolean_minus(k, which)
    if not result.success:
        raise DataError(result.error)
    verdict = result.verdict
    if fmt == "json":
        echo_json(asdict(verdict))
        return
    print_line(
        f"B_{k} minus {which} {verdict.removed}: {verdict.size} elements, "
        f"lattice: {yes_no(verdict.is_lattice)}, distributive: {yes_no(verdict.is_distributive)}"
    )


@main.command("export-dot")
@lattice_options
@click.option("--ret", "ret", is_flag=True, help="Export Ret L instead of L")
@click.option("--highlight", default=None, help="Elements to fill, e.g. '0,p'")
@click.pass_context
def export_dot(ctx, fixture, grid, file_path, ret, highlight):
    """
    Print the Hasse diagram in Graphviz DOT
    """
    loaded = _load(ctx, fixture, grid, file_path)
    L = loaded.lattice
    if ret:
        result = RetractService(_config(ctx)).retracts(L, "bruteforce", check_lattice=True)
        if not result.success:
            raise DataError(result.error)
        echo_dot(ret_poset_dot(result.poset, f"Ret {loaded.name}"))
        return
    mask = 0
    if highlight:
        try:
            mask = L.mask(part.strip() for part in highlight.split(",") if part.strip())
        except (IndexError, ValueError) as e:
            raise DataError(str(e)) from e
    echo_dot(lattice_dot(L, loaded.name, mask))


@main.command("config")
@click.option("--set", "assignment", default=None, metavar="KEY=VALUE", help="Store a setting")
@click.pass_context
def show_config(ctx, assignment):
    """
    Display the effective configuration, or store one setting
    """
    config_service = ConfigService(_config(ctx), CONFIG_FILE)
    if assignment is not None:
        key, sep, value = assignment.partition("=")
        if not sep:
            raise click.BadParameter("expected KEY=VALUE", param_hint="--set")
        error = config_service.set_value(key.strip(), value.strip())
        if error:
            raise DataError(error)
        logger.info(f"Saved {key.strip().upper()} to {CONFIG_FILE}")
        return

    if config_service.file_exists():
        logger.info(f"Configuration file: {CONFIG_FILE}\n")
    else:
        logger.info("No configuration file found; using environment and defaults.\n")
    for line in config_service.get_config_lines():
        print_line(line)


@main.command("l12-suite")
@click.option("--format", "fmt", type=TEXT_JSON, default="text")
@click.pass_context
@verdict_exit
def l12_suite(ctx, fmt):
    """
    Verify every property of the twelve-element fixture by brute force
    """
    result = CatalogService(_config(ctx), use_cache=False).l12_suite()
    if not result.success:
        raise DataError(result.error)
    if fmt == "json":
        echo_json({"passed": result.passed, "checks": result.checks})
    else:
        print_table("l12", ["check", "passed"], [(k, yes_no(v)) for k, v in result.checks.items()])
    if not result.passed:
        failed = [name for name, ok in result.checks.items() if not ok]
        raise Verdict(f"Failed checks: {', '.join(failed)}")


if __name__ == "__main__":
    main()
