"""Interface en ligne de commande du verificateur de types.

Chaque sous-commande produit un ``Report`` ; ``--json`` l'imprime tel quel,
sinon un resume lisible est affiche. Codes de sortie (config.py) :
0 succes, 1 verification refusee, 2 usage ou entree invalide, 3 analyse
hors formalisme.
"""

from __future__ import annotations

import argparse
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import config
from src.algebra.normal_form import normalize
from src.algebra.qtype import Branch, QType, validate_qtype
from src.algebra.separability import separable_subset
from src.algebra.syntax import format_qtype, parse_type
from src.errors import TypeCheckError, UnsupportedAnalysis
from src.frontend.parser import SourceFile, format_program, load_source
from src.frontend.report import (
    Report,
    probability_models,
    qtype_to_model,
    trace_entries,
    trace_table,
)
from src.inference.engine import InferenceOptions, check, run_inference, semantics_of_program
from src.inference.gates import GateSemantics, resolve_semantics
from src.inference.tcount import tcount_lower_bound
from src.oracle.verify import fuzz_summary, verification_table
from src.qecc.codes import load_code, steane_code
from src.qecc.transversal import encoder_check, transversal_program, transversality_check
from src.state.journal import Reporter, journal
from src.synthesis.one_t import prep_clifford_plus_T


@dataclass
class CommandOutcome:
    """Rapport d'une sous-commande et son rendu texte."""

    report: Report
    lines: list[str] = field(default_factory=list)


# ----------------------------------------------------------------------
# Outils communs
# ----------------------------------------------------------------------


def _options(args: argparse.Namespace) -> InferenceOptions:
    return InferenceOptions(
        keep_impossible=getattr(args, "keep_impossible", False),
        trace=getattr(args, "trace", False),
        defer_measurements=getattr(args, "defer", False),
    )


def _initial_type(source: SourceFile, reporter: Reporter) -> QType:
    if source.init is not None:
        return source.init
    reporter(f"[INFO] Pas de INIT : etat |0...0> sur {source.n} qubit(s)")
    return QType.single(Branch.zero_state(source.n))


def _load(path: str | Path, reporter: Reporter) -> SourceFile:
    source = load_source(path)
    for declared in (source.init, source.expect):
        if declared is not None:
            validate_qtype(declared, reporter)
    return source


def _read_type(text: str, reporter: Reporter) -> QType:
    parsed = parse_type(text)
    validate_qtype(parsed, reporter)
    return parsed


def _normalized(t: QType) -> QType:
    return t.map(lambda b: normalize(b) if b.is_gottesman() else b)


def _single_branch(text: str, reporter: Reporter) -> Branch:
    parsed = _read_type(text, reporter)
    if len(parsed.branches) != 1:
        raise UnsupportedAnalysis("Une seule branche attendue (pas d'union)")
    return parsed.branches[0]


def _qubit_list(text: str) -> list[int]:
    try:
        return [int(q) for q in text.replace(" ", "").split(",") if q]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"liste de qubits invalide : {text}") from exc


# ----------------------------------------------------------------------
# Sous-commandes
# ----------------------------------------------------------------------


def cmd_infer(args: argparse.Namespace, reporter: Reporter) -> CommandOutcome:
    source = _load(args.file, reporter)
    result = run_inference(source.program, _initial_type(source, reporter), _options(args), reporter)
    output = _normalized(result.output) if args.normalize else result.output
    report = Report(
        command="infer",
        inferred=qtype_to_model(output),
        trace=trace_entries(result) if args.trace else None,
        probabilities=probability_models(result.outcomes) or None,
        details={"portes": result.stats.gates, "mesures": result.stats.measurements},
    )
    lines = [format_qtype(output)]
    if args.trace:
        lines = [trace_table(result).to_string(index=False), *lines]
    return CommandOutcome(report, lines)


def cmd_check(args: argparse.Namespace, reporter: Reporter) -> CommandOutcome:
    source = _load(args.file, reporter)
    if source.expect is None:
        raise UnsupportedAnalysis(f"{args.file} : pas de declaration EXPECT")
    init = _initial_type(source, reporter)
    verdict = check(source.program, init, source.expect, _options(args), reporter)
    passed = verdict.passed
    if args.strict:
        passed = format_qtype(verdict.inferred) == format_qtype(source.expect)
    lines = [f"infere : {format_qtype(verdict.inferred)}", f"attendu : {format_qtype(source.expect)}"]
    lines.extend(verdict.diff)
    lines.append("VERIFIE" if passed else "REFUSE")
    if not passed:
        reporter(f"[AVERTISSEMENT] {source.name} : type infere different du type attendu")
    report = Report(
        command="check",
        verdict="ok" if passed else "echec",
        inferred=qtype_to_model(verdict.inferred),
        expected=qtype_to_model(source.expect),
        details={"diff": list(verdict.diff)},
    )
    return CommandOutcome(report, lines)


def cmd_normalize(args: argparse.Namespace, reporter: Reporter) -> CommandOutcome:
    output = _normalized(_read_type(args.type, reporter))
    return CommandOutcome(Report(command="normalize", inferred=qtype_to_model(output)), [format_qtype(output)])


def cmd_separable(args: argparse.Namespace, reporter: Reporter) -> CommandOutcome:
    result = separable_subset(_single_branch(args.type, reporter), args.qubits)
    if result.separable and result.branch is not None:
        text = format_qtype(QType.single(result.branch))
        report = Report(command="separable", inferred=qtype_to_model(QType.single(result.branch)))
        return CommandOutcome(report, [text])
    reporter(f"[AVERTISSEMENT] Non separable selon {list(result.qubits)} : {result.reason}")
    report = Report(command="separable", verdict="echec", details={"raison": result.reason})
    return CommandOutcome(report, [f"non separable : {result.reason}"])


def cmd_measure(args: argparse.Namespace, reporter: Reporter) -> CommandOutcome:
    source = _load(args.file, reporter)
    if not source.program.has_measurements():
        reporter(f"[AVERTISSEMENT] {source.name} ne contient aucune instruction MEAS")
    result = run_inference(source.program, _initial_type(source, reporter), _options(args), reporter)
    lines = [str(outcome) for outcome in result.outcomes]
    lines.append(format_qtype(result.output))
    report = Report(
        command="measure",
        inferred=qtype_to_model(result.output),
        probabilities=probability_models(result.outcomes),
    )
    return CommandOutcome(report, lines)


def _semantics_of(target: str) -> GateSemantics:
    path = Path(target)
    if path.suffix == ".qt" or path.exists():
        source = load_source(path)
        return semantics_of_program(source.program, name=source.name)
    return resolve_semantics(target)


def cmd_tbound(args: argparse.Namespace, reporter: Reporter) -> CommandOutcome:
    semantics = _semantics_of(args.target)
    bound = tcount_lower_bound(semantics)
    reporter(f"[OK] {semantics.name} : au moins {bound} porte(s) T")
    return CommandOutcome(Report(command="tbound", tbound=bound), [str(bound)])


def cmd_synth(args: argparse.Namespace, reporter: Reporter) -> CommandOutcome:
    result = prep_clifford_plus_T(_single_branch(args.type, reporter))
    reporter(f"[OK] Circuit certifie : {result.gate_count()} porte(s)")
    text = format_program(result.circuit)
    report = Report(
        command="synth",
        inferred=qtype_to_model(result.certificate.output),
        details={
            "circuit": text,
            "portes": result.gate_count(),
            "portes_T": result.gate_count("T", "Tdg"),
        },
    )
    return CommandOutcome(report, [text.rstrip("\n")])


def cmd_verify(args: argparse.Namespace, reporter: Reporter) -> CommandOutcome:
    if args.file is None and args.seed is None:
        raise argparse.ArgumentTypeError("verify attend un fichier ou --seed")
    lines: list[str] = []
    details: dict = {}
    passed = True
    if args.file is not None:
        source = _load(args.file, reporter)
        reporter(f"[STEP] Oracle dense sur {source.name}")
        table = verification_table(source.program)
        passed = bool(table["ok"].all())
        lines.append(table.to_string(index=False))
        details["generateurs"] = json.loads(table.to_json(orient="records"))
    if args.seed is not None:
        summary = fuzz_summary(args.seed, programs=args.programs, report=reporter)
        passed = passed and bool(summary["ok"].all())
        lines.append(summary.to_string(index=False))
        details["aleatoire"] = json.loads(summary.to_json(orient="records"))
    report = Report(command="verify", verdict="ok" if passed else "echec", details=details)
    return CommandOutcome(report, lines)


def cmd_transversal(args: argparse.Namespace, reporter: Reporter) -> CommandOutcome:
    code = load_code(args.code) if args.code else steane_code()
    target = resolve_semantics(args.logical)
    gates = [g for g in args.gates.split(",") if g]
    program = transversal_program(gates, code.n, blocks=target.arity)
    verdict = transversality_check(code, program, target, report=reporter)
    lines = [f"{d.kind} : {d.detail}" for d in verdict.defects]
    lines.append(f"{verdict.target} : {'transversale' if verdict.passed else 'refusee'}")
    report = Report(
        command="transversal",
        verdict="ok" if verdict.passed else "echec",
        details={"defauts": [d.detail for d in verdict.defects], "cible": verdict.target},
    )
    return CommandOutcome(report, lines)


def cmd_encoder(args: argparse.Namespace, reporter: Reporter) -> CommandOutcome:
    code = load_code(args.code) if args.code else steane_code()
    source = _load(args.file, reporter)
    verdict = encoder_check(source.program, code, args.basis, report=reporter)
    report = Report(
        command="encoder",
        verdict="ok" if verdict.passed else "echec",
        inferred=qtype_to_model(verdict.inferred),
        expected=qtype_to_model(verdict.expected),
    )
    return CommandOutcome(report, [format_qtype(verdict.inferred), "VERIFIE" if verdict.passed else "REFUSE"])


Handler = Callable[[argparse.Namespace, Reporter], CommandOutcome]


# ----------------------------------------------------------------------
# Analyse des arguments
# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qtypes", description="Verificateur de types pour circuits quantiques"
    )
    parser.add_argument("--json", action="store_true", help="rapport JSON sur la sortie standard")
    parser.add_argument("--verbose", action="store_true", help="affiche le journal d'analyse")
    sub = parser.add_subparsers(dest="command", required=True)

    infer = sub.add_parser("infer", help="infere le type de sortie d'un programme")
    infer.add_argument("file")
    infer.add_argument("--trace", action="store_true")
    infer.add_argument("--normalize", action="store_true")
    infer.add_argument("--keep-impossible", action="store_true")
    infer.add_argument("--defer", action="store_true", help="mesures differees")
    infer.set_defaults(handler=cmd_infer)

    check_cmd = sub.add_parser("check", help="compare le type infere a EXPECT")
    check_cmd.add_argument("file")
    check_cmd.add_argument("--strict", action="store_true", help="comparaison syntaxique")
    check_cmd.add_argument("--keep-impossible", action="store_true")
    check_cmd.set_defaults(handler=cmd_check)

    norm = sub.add_parser("normalize", help="forme normale d'un type")
    norm.add_argument("type")
    norm.set_defaults(handler=cmd_normalize)

    sep = sub.add_parser("separable", help="jugement de separabilite")
    sep.add_argument("type")
    sep.add_argument("--qubits", type=_qubit_list, required=True)
    sep.set_defaults(handler=cmd_separable)

    meas = sub.add_parser("measure", help="issues des mesures d'un programme")
    meas.add_argument("file")
    meas.add_argument("--keep-impossible", action="store_true")
    meas.set_defaults(handler=cmd_measure)

    tbound = sub.add_parser("tbound", help="borne inferieure sur le nombre de T")
    tbound.add_argument("target", help="fichier .qt ou nom de porte")
    tbound.set_defaults(handler=cmd_tbound)

    synth = sub.add_parser("synth", help="circuit preparant un type")
    synth.add_argument("type")
    synth.set_defaults(handler=cmd_synth)

    verify = sub.add_parser("verify", help="confrontation a l'oracle dense")
    verify.add_argument("file", nargs="?")
    verify.add_argument("--oracle", action="store_true", help="oracle matriciel (seul disponible)")
    verify.add_argument("--seed", type=int)
    verify.add_argument("--programs", type=int, default=50)
    verify.set_defaults(handler=cmd_verify)

    trans = sub.add_parser("transversal", help="transversalite d'une porte logique")
    trans.add_argument("--gates", required=True, help="portes physiques, ex. Z,S")
    trans.add_argument("--logical", required=True, help="porte logique visee, ex. S")
    trans.add_argument("--code", help="fichier .code (Steane par defaut)")
    trans.set_defaults(handler=cmd_transversal)

    enc = sub.add_parser("encoder", help="verifie un encodeur")
    enc.add_argument("file")
    enc.add_argument("--basis", choices=("X", "Y", "Z"), default="Z")
    enc.add_argument("--code", help="fichier .code (Steane par defaut)")
    enc.set_defaults(handler=cmd_encoder)
    return parser


def _exit_code(report: Report) -> int:
    return {
        "ok": config.EXIT_OK,
        "echec": config.EXIT_CHECK_FAILED,
        "non_supporte": config.EXIT_UNSUPPORTED,
    }.get(report.verdict, config.EXIT_USAGE)


def cli_run(argv: Sequence[str] | None = None, *, out: Reporter = print) -> tuple[int, Report | None]:
    """Execute une commande ; renvoie le code de sortie et le rapport.

    Args:
        argv: Arguments (sans le nom du programme).
        out: Fonction d'affichage des resultats.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (config.EXIT_OK if exc.code == 0 else config.EXIT_USAGE), None

    journal.reset()
    reporter = journal.reporter(echo=out if args.verbose else None)
    try:
        outcome = args.handler(args, reporter)
        report = outcome.report
        lines = outcome.lines
    except UnsupportedAnalysis as exc:
        reporter(f"[ERREUR] Analyse non supportee : {exc}")
        report = Report(command=args.command, verdict="non_supporte")
        lines = [f"non supporte : {exc}"]
    except (TypeCheckError, OSError, argparse.ArgumentTypeError) as exc:
        reporter(f"[ERREUR] {exc}")
        report = Report(command=args.command, verdict="erreur")
        lines = [f"erreur : {exc}"]

    journal.mark_complete(success=report.verdict == "ok")
    report = report.model_copy(update={"diagnostics": journal.snapshot().diagnostics})
    if args.json:
        out(report.to_json())
    else:
        for line in lines:
            out(line)
    return _exit_code(report), report


__all__ = ["build_parser", "cli_run"]
