"""Command-line front end: load a presentation, build its decomposition
tables, run verifier suites, and print text or schema-stable JSON reports.

Input JSON schema for custom presentations (--input):

    {
      "kind": "bialgebra" | "frobenius",
      "name": "optional display name",
      "dim": d,
      "basis": [d labels],
      "mult": [per basis index i, a list of [j, k, coeff] triples
               meaning e_i * e_j contains coeff * e_k],
      "unit": [d coeffs],
      -- bialgebra only --
      "comult": [per basis index i, a list of [j, k, coeff] triples
                 meaning comult(e_i) contains coeff * e_j (x) e_k],
      "counit": [d coeffs],
      -- frobenius only --
      "frobenius_functional": [d coeffs]
    }

Coefficients are integers or strings like "-3/7"; they are coerced into
the chosen ground field, so exactness survives serialization.

Exit codes: 0 all selected identities hold, 1 at least one identity
violated, 2 malformed input (unparseable JSON, bad schema, bad flags).
"""

import dataclasses
import json
import os
import sys

import click

from .cooperad import (MAX_WITNESSES, verify_comultiplication,
                       verify_cooperad_axioms)
from .derived import verify_chain_identities
from .exactlinalg import FieldSpec
from .homology import HomologyError, build_homology_structure, \
    verify_gerstenhaber
from .instances import (BUILTINS, BialgebraPresentation,
                        FrobeniusPresentation, PresentationError, builtin,
                        build_cooperad, validate_bialgebra, validate_frobenius)

SUITE_CHOICES = ("cooperad", "chain", "homology", "all")

SUITE_DESCRIPTIONS = {
    "cooperad": "counitality and the four coassociativity families of the "
                "decomposition table",
    "chain": "cosimplicial identities, d.d = 0, cup coproduct, "
             "cocommutativity homotopy, cobracket, coJacobi, coLeibniz",
    "homology": "transferred cup and cobracket axioms on homology classes "
                "(builds two extra degrees of headroom)",
    "all": "every suite above, in dependency order",
}


# -- configuration ------------------------------------------------------

@dataclasses.dataclass
class RunConfig:
    """One resolved invocation: instance, ground field, depth, suites."""

    source: str
    presentation: object
    field: FieldSpec
    max_degree: int
    suites: tuple
    as_json: bool = False
    max_witnesses: int = MAX_WITNESSES
    fail_fast: bool = False
    structure: bool = False


def parse_field(text):
    """Ground field from a flag value: "Q" or "F<p>" with p prime."""
    t = text.strip()
    if t == "Q":
        return FieldSpec.rationals()
    if t.startswith("F") and t[1:].isdigit():
        try:
            return FieldSpec.prime_field(int(t[1:]))
        except ValueError as exc:
            raise click.UsageError(str(exc))
    raise click.UsageError('--field must be "Q" or "F<p>", got %r' % text)


def field_label(field):
    if field.characteristic == 0:
        return "Q"
    return "F%d" % field.characteristic


def _triple_rows(data, key, dim, field):
    """Parse a [[ [j, k, coeff] triple ]] table (one row per basis index)."""
    rows = data.get(key)
    if not isinstance(rows, list) or len(rows) != dim:
        raise PresentationError('"%s" must be a list of %d rows' % (key, dim))
    out = {}
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise PresentationError('"%s" row %d is not a list' % (key, i))
        cell = {}
        for t in row:
            if not (isinstance(t, list) and len(t) == 3):
                raise PresentationError(
                    '"%s" row %d: expected [j, k, coeff] triples, got %r'
                    % (key, i, t))
            j, k, c = t
            if not (isinstance(j, int) and isinstance(k, int)):
                raise PresentationError(
                    '"%s" row %d: indices must be integers' % (key, i))
            c = _coeff(c, field, "%s[%d]" % (key, i))
            prev = cell.get((j, k), field.zero)
            cell[(j, k)] = field.add(prev, c)
        out[i] = cell
    return out


def _coeff(c, field, where):
    if isinstance(c, bool) or not isinstance(c, (int, str)):
        raise PresentationError(
            '%s: coefficients must be integers or "a/b" strings, got %r'
            % (where, c))
    try:
        return field.coerce(c)
    except (ValueError, ZeroDivisionError) as exc:
        raise PresentationError("%s: bad coefficient %r (%s)"
                                % (where, c, exc))


def _coeff_vector(data, key, dim, field):
    vals = data.get(key)
    if not isinstance(vals, list) or len(vals) != dim:
        raise PresentationError('"%s" must be a list of %d coefficients'
                                % (key, dim))
    return {k: _coeff(c, field, key) for k, c in enumerate(vals)}


def presentation_from_dict(data, field, fallback_name="custom"):
    """Build a presentation from the documented JSON schema."""
    if not isinstance(data, dict):
        raise PresentationError("top level must be a JSON object")
    kind = data.get("kind")
    if kind not in ("bialgebra", "frobenius"):
        raise PresentationError(
            '"kind" must be "bialgebra" or "frobenius", got %r' % (kind,))
    basis = data.get("basis")
    if not (isinstance(basis, list) and basis
            and all(isinstance(b, str) for b in basis)):
        raise PresentationError('"basis" must be a nonempty list of labels')
    dim = data.get("dim", len(basis))
    if dim != len(basis):
        raise PresentationError('"dim" (%r) does not match the basis size %d'
                                % (dim, len(basis)))
    name = data.get("name", fallback_name)
    if not isinstance(name, str):
        raise PresentationError('"name" must be a string')

    triples = _triple_rows(data, "mult", dim, field)
    mult = {}
    for i, cell in triples.items():
        for (j, k), c in cell.items():
            if c:
                mult.setdefault((i, j), {})[k] = c
    unit = _coeff_vector(data, "unit", dim, field)

    if kind == "bialgebra":
        comult = _triple_rows(data, "comult", dim, field)
        counit = _coeff_vector(data, "counit", dim, field)
        return BialgebraPresentation(name, field, basis, mult, unit,
                                     comult, counit)
    functional = _coeff_vector(data, "frobenius_functional", dim, field)
    return FrobeniusPresentation(name, field, basis, mult, unit, functional)


def load_presentation(builtin_name, input_path, field_text):
    """Resolve the --builtin/--input/--field flags into a presentation."""
    if (builtin_name is None) == (input_path is None):
        raise click.UsageError(
            "exactly one of --builtin and --input is required")
    field = parse_field(field_text) if field_text else None
    if builtin_name is not None:
        try:
            return builtin_name, builtin(builtin_name, field)
        except PresentationError as exc:
            raise click.UsageError(str(exc))
    try:
        with open(input_path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise click.UsageError("cannot read %s: %s" % (input_path, exc))
    except json.JSONDecodeError as exc:
        raise click.UsageError("malformed JSON in %s: %s" % (input_path, exc))
    if field is None:
        field = FieldSpec.rationals()
    stem = os.path.splitext(os.path.basename(input_path))[0]
    try:
        P = presentation_from_dict(data, field, fallback_name=stem)
    except PresentationError as exc:
        raise click.UsageError("invalid presentation in %s: %s"
                               % (input_path, exc))
    return P.name, P


def validate_presentation(P):
    """The kind-appropriate validator report (also derives Frobenius data)."""
    if P.kind == "bialgebra":
        return validate_bialgebra(P)
    try:
        return validate_frobenius(P)
    except PresentationError as exc:
        raise click.UsageError(str(exc))


# -- report rendering ---------------------------------------------------

def _witness_payload(report, limit):
    out = []
    for check in report.checks:
        for w in check.witnesses:
            if len(out) >= limit:
                return out
            out.append(w.as_dict())
    return out


def report_payload(report, limit):
    identities = [
        {"identity": name, "pass": p, "fail": f, "skip": s}
        for name, (p, f, s) in report.identity_counts().items()
    ]
    return {
        "name": report.suite,
        "pass": report.n_pass,
        "fail": report.n_fail,
        "skip": report.n_skip,
        "identities": identities,
        "witnesses": _witness_payload(report, limit),
        "meta": report.meta,
    }


def _echo_witnesses(report, limit):
    shown = 0
    for check in report.checks:
        for w in check.witnesses:
            if shown >= limit:
                return
            keys = ""
            if w.keys:
                keys = "; keys " + ", ".join(
                    "(%s)" % ",".join(map(str, k)) for k in w.keys)
            click.echo("    witness %s %r on %s: left %s, right %s%s"
                       % (w.identity, tuple(w.indices), w.basis_label,
                          w.left, w.right, keys))
            shown += 1


def _echo_report(report, limit):
    click.echo("suite %s: %d pass, %d fail, %d skip"
               % (report.suite, report.n_pass, report.n_fail, report.n_skip))
    for name, (p, f, s) in report.identity_counts().items():
        parts = ["%d pass" % p]
        if f:
            parts.append("%d fail" % f)
        if s:
            parts.append("%d skip" % s)
        click.echo("  %s: %s" % (name, ", ".join(parts)))
    _echo_witnesses(report, limit)


def _emit(config, reports, extra=None):
    if config.as_json:
        payload = {
            "instance": config.source,
            "field": field_label(config.field),
            "N": config.max_degree,
            "suites": [report_payload(r, config.max_witnesses)
                       for r in reports],
        }
        if extra:
            payload.update(extra)
        click.echo(json.dumps(payload, indent=2, sort_keys=True,
                              ensure_ascii=False))
        return
    click.echo("instance %s over %s, N=%d"
               % (config.source, field_label(config.field),
                  config.max_degree))
    for report in reports:
        _echo_report(report, config.max_witnesses)
        if report.suite == "homology coalgebra":
            dims = list(report.meta.get("dims", ()))
            shown = dims[:config.max_degree + 1]
            click.echo("  homology dimensions by degree: %s" % (shown,))
    if extra:
        for line in extra.get("lines", ()):
            click.echo(line)


# -- commands -----------------------------------------------------------

def _homology_pipeline(config):
    """Retraction and transferred structure with two degrees of headroom."""
    C2, T2 = build_cooperad(config.presentation, config.max_degree + 2)
    return build_homology_structure(C2, T2, degree_cap=config.max_degree)


def cmd_check(config):
    """Run the selected suites in dependency order; 0 iff no failures."""
    reports = [validate_presentation(config.presentation)]
    failed = not reports[0].ok

    def want(name):
        return name in config.suites and not (failed and config.fail_fast)

    if want("cooperad") or want("chain"):
        C, T = build_cooperad(config.presentation, config.max_degree)
    if want("cooperad"):
        reports.append(verify_cooperad_axioms(
            C, max_witnesses=config.max_witnesses))
        reports.append(verify_comultiplication(
            C, T, max_witnesses=config.max_witnesses))
        failed = failed or not (reports[-1].ok and reports[-2].ok)
    if want("chain"):
        reports.append(verify_chain_identities(
            C, T, max_witnesses=config.max_witnesses))
        failed = failed or not reports[-1].ok
    if want("homology"):
        try:
            HS = _homology_pipeline(config)
        except HomologyError as exc:
            click.echo("homology construction failed: %s" % exc, err=True)
            _emit(config, reports)
            return 1
        reports.append(verify_gerstenhaber(
            HS, max_witnesses=config.max_witnesses))
        failed = failed or not reports[-1].ok

    _emit(config, reports)
    return 1 if any(not r.ok for r in reports) else 0


def _format_transferred(HS, tables, spaces):
    """Rows {degree, component, entries:[[source, target, coeff]]}."""
    field = spaces.field
    rows = []
    for n in range(HS.degree_cap + 1):
        sm = tables.get(n)
        if sm is None:
            continue
        dom = spaces.space(n)
        for (p, q) in sorted(sm.components):
            cod = spaces.pair_space(p, q)
            entries = [[dom.labels[c], cod.labels[r], field.to_str(v)]
                       for r, c, v in sm.components[(p, q)].entries()]
            entries.sort()
            if entries:
                rows.append({"degree": n, "component": [p, q],
                             "entries": entries})
    return rows


def _structure_lines(title, rows):
    lines = ["%s:" % title]
    if not rows:
        lines.append("  (all components vanish)")
        return lines
    by_source = {}
    for row in rows:
        for src, tgt, coeff in row["entries"]:
            term = tgt if coeff == "1" else "%s*%s" % (coeff, tgt)
            by_source.setdefault((row["degree"], src), []).append(term)
    for (n, src), terms in sorted(by_source.items()):
        lines.append("  degree %d: %s -> %s" % (n, src, " + ".join(terms)))
    return lines


def cmd_homology(config):
    """Print homology dimensions and, on request, transferred tables."""
    vreport = validate_presentation(config.presentation)
    if not vreport.ok:
        _emit(config, [vreport])
        return 1
    try:
        HS = _homology_pipeline(config)
    except HomologyError as exc:
        click.echo("homology construction failed: %s" % exc, err=True)
        return 1
    dims = list(HS.retraction.dims())[:config.max_degree + 1]

    if config.as_json:
        payload = {
            "instance": config.source,
            "field": field_label(config.field),
            "N": config.max_degree,
            "dims": dims,
        }
        if config.structure:
            spaces = HS.retraction.homology_spaces()
            payload["basis"] = {
                str(n): list(spaces.space(n).labels)
                for n in range(config.max_degree + 1)
            }
            payload["cup"] = _format_transferred(HS, HS.cup, spaces)
            payload["cobracket"] = _format_transferred(HS, HS.cobracket,
                                                       spaces)
        click.echo(json.dumps(payload, indent=2, sort_keys=True,
                              ensure_ascii=False))
        return 0

    click.echo("instance %s over %s, N=%d"
               % (config.source, field_label(config.field),
                  config.max_degree))
    click.echo("homology dimensions by degree: %s" % (dims,))
    if config.structure:
        spaces = HS.retraction.homology_spaces()
        for n in range(config.max_degree + 1):
            click.echo("degree %d classes: %s"
                       % (n, ", ".join(spaces.space(n).labels)))
        for line in _structure_lines(
                "transferred cup coproduct",
                _format_transferred(HS, HS.cup, spaces)):
            click.echo(line)
        for line in _structure_lines(
                "transferred cobracket",
                _format_transferred(HS, HS.cobracket, spaces)):
            click.echo(line)
    return 0


def cmd_list(as_json=False):
    """List built-in instances and suites with one-line descriptions."""
    rows = []
    for name in sorted(BUILTINS):
        factory, default_field, description = BUILTINS[name]
        P = factory(default_field())
        rows.append({"name": name, "kind": P.kind, "dim": P.dim,
                     "field": field_label(P.field),
                     "description": description})
    suites = [{"name": name, "description": SUITE_DESCRIPTIONS[name]}
              for name in SUITE_CHOICES]
    if as_json:
        click.echo(json.dumps({"builtins": rows, "suites": suites},
                              indent=2, sort_keys=True, ensure_ascii=False))
        return 0
    click.echo("built-in instances:")
    width = max(len(r["name"]) for r in rows)
    for r in rows:
        click.echo("  %-*s  %-9s dim %d  %-3s %s"
                   % (width, r["name"], r["kind"], r["dim"], r["field"],
                      r["description"]))
    click.echo("suites:")
    for s in suites:
        click.echo("  %-9s %s" % (s["name"], s["description"]))
    return 0


# -- click wiring -------------------------------------------------------

def instance_options(fn):
    for option in reversed((
            click.option("--builtin", "builtin_name",
                         type=click.Choice(sorted(BUILTINS)), default=None,
                         help="Named built-in presentation."),
            click.option("--input", "input_path",
                         type=click.Path(exists=True, dir_okay=False),
                         default=None,
                         help="Path to a presentation JSON file."),
            click.option("--field", "field_text", default=None,
                         metavar="Q|F<p>",
                         help="Ground field (default: the instance's own)."),
            click.option("--max-degree", "-N", "max_degree",
                         type=click.IntRange(min=1), default=3,
                         show_default=True,
                         help="Truncation degree for the tables."),
    )):
        fn = option(fn)
    return fn


def _build_config(builtin_name, input_path, field_text, max_degree,
                  **kwargs):
    source, P = load_presentation(builtin_name, input_path, field_text)
    return RunConfig(source=source, presentation=P, field=P.field,
                     max_degree=max_degree, **kwargs)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main():
    """Exact verifier for truncated decomposition tables: cooperad axioms,
    the induced chain-level identities, and the transferred coalgebra
    structure on homology."""


@main.command("check")
@instance_options
@click.option("--suite", type=click.Choice(SUITE_CHOICES), default="all",
              show_default=True, help="Which verifier suite to run.")
@click.option("--json", "as_json", is_flag=True,
              help="Emit the schema-stable JSON report.")
@click.option("--max-witnesses", type=click.IntRange(min=0), default=3,
              show_default=True,
              help="How many failure witnesses to print per suite.")
@click.option("--fail-fast", is_flag=True,
              help="Stop after the first suite with failures.")
def check_command(builtin_name, input_path, field_text, max_degree, suite,
                  as_json, max_witnesses, fail_fast):
    """Verify identities on a built-in or user-supplied presentation."""
    suites = SUITE_CHOICES[:3] if suite == "all" else (suite,)
    config = _build_config(builtin_name, input_path, field_text, max_degree,
                           suites=suites, as_json=as_json,
                           max_witnesses=max_witnesses, fail_fast=fail_fast)
    sys.exit(cmd_check(config))


@main.command("homology")
@instance_options
@click.option("--json", "as_json", is_flag=True,
              help="Emit dimensions (and tables) as JSON.")
@click.option("--structure", is_flag=True,
              help="Include transferred cup and cobracket tables.")
def homology_command(builtin_name, input_path, field_text, max_degree,
                     as_json, structure):
    """Homology dimensions and transferred structure constants."""
    config = _build_config(builtin_name, input_path, field_text, max_degree,
                           suites=("homology",), as_json=as_json,
                           structure=structure)
    sys.exit(cmd_homology(config))


@main.command("list")
@click.option("--json", "as_json", is_flag=True,
              help="Emit the table as JSON.")
def list_command(as_json):
    """List built-in instances and verifier suites."""
    sys.exit(cmd_list(as_json=as_json))


if __name__ == "__main__":
    main()
