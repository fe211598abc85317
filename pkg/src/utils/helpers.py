"""
Utilities and Helpers
=====================

Fonctions utilitaires du CLI: lecture des arguments et mise en forme des
résultats (JSON, CSV, tableau texte).
"""

import csv
import io
import json
import math
import re
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np

from qam.config.config import get_settings
from qam.generators.interval import Interval
from qam.schemas.results import BoundReport, RhoEstimate, SuiteResult, TableRow
from qam.schemas.sample import WeightedSample
from qam.utils.errors import ValidationError

# Marqueur des flottants déjà formatés, retiré après json.dumps
_FLOAT_MARK = "@@float@@"
_FLOAT_PATTERN = re.compile(r'"' + re.escape(_FLOAT_MARK) + r'([^"]*)"')


def parse_float_list(text: str, name: str = "values") -> List[float]:
    """
    Parse une liste "a,b,c" en flottants.

    Args:
        text: Liste séparée par des virgules
        name: Nom de l'option, pour le message d'erreur

    Returns:
        Liste de flottants

    Raises:
        ValidationError: Si un élément n'est pas un nombre
    """
    items = [item.strip() for item in text.split(",")]
    if not text.strip() or any(not item for item in items):
        raise ValidationError(f"--{name} attend une liste 'a,b,...', reçu '{text}'")
    try:
        return [float(item) for item in items]
    except ValueError as e:
        raise ValidationError(f"--{name} contient une valeur non numérique : '{text}'") from e


def parse_interval(text: str) -> Interval:
    """Texte de --interval → Interval; ValidationError si mal formé."""
    try:
        return Interval.parse(text)
    except ValueError as e:
        raise ValidationError(f"Intervalle invalide '{text}': {e}") from e


def sample_interval(values: Sequence[float]) -> Interval:
    """Plus petit intervalle fermé contenant les valeurs (élargi si elles sont toutes égales)."""
    lo, hi = min(values), max(values)
    if lo == hi:
        hi = lo + max(abs(lo), 1.0)
    return Interval(lo, hi)


def format_float(value: Optional[float], digits: Optional[int] = None) -> str:
    """Flottant à `digits` chiffres significatifs (QAM_FLOAT_DIGITS par défaut)."""
    if value is None:
        return ""
    digits = digits or get_settings().output['float_digits']
    return format(float(value), f".{digits}g")


def _jsonable(obj: Any) -> Any:
    """Convertit récursivement pour json.dumps; les flottants non finis deviennent null."""
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Interval):
        return interval_to_dict(obj)
    if isinstance(obj, np.generic):
        obj = obj.item()
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return None
        return _FLOAT_MARK + format_float(obj)
    return str(obj)


def to_json(obj: Any) -> str:
    """
    JSON déterministe: clés triées, flottants à 17 chiffres significatifs.

    Args:
        obj: Dictionnaires, listes et scalaires (numpy compris)

    Returns:
        Texte JSON indenté
    """
    text = json.dumps(_jsonable(obj), indent=2, sort_keys=True, ensure_ascii=False)
    return _FLOAT_PATTERN.sub(r"\1", text)


def interval_to_dict(U: Interval) -> Dict[str, Any]:
    return {'lo': U.lo, 'hi': U.hi, 'lo_closed': U.lo_closed, 'hi_closed': U.hi_closed}


def rho_to_dict(rho: RhoEstimate) -> Dict[str, Any]:
    return {'value': rho.value, 'arg': list(rho.arg), 'gap': rho.refinement_gap}


def report_to_dict(report: BoundReport) -> Dict[str, Any]:
    """Schéma {pair, interval, K, epsilon, rho, bounds} de la commande bounds."""
    return {
        'pair': list(report.pair),
        'interval': interval_to_dict(report.interval),
        'K': report.K,
        'epsilon': report.epsilon,
        'rho': rho_to_dict(report.rho),
        'bounds': [
            {'name': b.name, 'value': b.value, 'applicable': b.applicable, 'params': b.params}
            for b in report.bounds
        ],
    }


def _csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_float(v) if isinstance(v, float) else v for v in row])
    return buffer.getvalue().rstrip("\n")


def _text_table(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    cells = [[format_float(v) if isinstance(v, float) else str(v) for v in row] for row in rows]
    widths = [max(len(h), *(len(r[i]) for r in cells)) if cells else len(h) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines.extend("  ".join(c.ljust(w) for c, w in zip(row, widths)) for row in cells)
    return "\n".join(lines)


def render_mean(label: str, sample: WeightedSample, value: float, fmt: str) -> str:
    if fmt == "json":
        return to_json({'generator': label, 'values': sample.values, 'weights': sample.weights, 'mean': value})
    if fmt == "csv":
        return _csv(("generator", "mean"), [(label, value)])
    return format_float(value)


def render_rho(pair: Sequence[str], U: Interval, rho: RhoEstimate, fmt: str) -> str:
    if fmt == "json":
        return to_json({
            'pair': list(pair),
            'interval': interval_to_dict(U),
            'rho': rho_to_dict(rho),
            'evaluations': rho.evaluations,
            'on_boundary': rho.on_boundary,
        })
    rows = [
        ("value", rho.value),
        ("x", rho.x),
        ("z", rho.z),
        ("theta", rho.theta),
        ("gap", rho.refinement_gap),
    ]
    if fmt == "csv":
        return _csv(("quantity", "value"), rows)
    title = f"rho({pair[0]}, {pair[1]}) on {U}"
    return title + "\n" + _text_table(("quantity", "value"), rows)


def render_report(report: BoundReport, fmt: str) -> str:
    """
    Rapport de bornes au format demandé.

    CSV: une ligne par borne, colonnes name,value,applicable.
    """
    if fmt == "json":
        return to_json(report_to_dict(report))
    rows = [(b.name, b.value, str(b.applicable).lower()) for b in report.bounds]
    if fmt == "csv":
        return _csv(("name", "value", "applicable"), rows)
    header = [
        f"{report.pair[0]} / {report.pair[1]} on {report.interval}",
        f"K = {format_float(report.K)}   epsilon = {format_float(report.epsilon)}",
        f"rho ≈ {format_float(report.rho.value)} at (x, z, theta) = "
        f"({', '.join(format_float(v) for v in report.rho.arg)})",
        "",
    ]
    table_rows = [(b.name, b.kind, "" if b.value is None else b.value, b.reason or "") for b in report.bounds]
    return "\n".join(header) + _text_table(("bound", "kind", "value", "note"), table_rows)


def render_table_rows(rows: Sequence[TableRow], fmt: str) -> str:
    if fmt == "json":
        return to_json([row.dict() for row in rows])
    data = [(row.name, row.published, "" if row.computed is None else row.computed,
             "ok" if row.within else "OUT") for row in rows]
    if fmt == "csv":
        return _csv(("name", "published", "computed", "status"), data)
    described = [(row.description,) + line[1:] for row, line in zip(rows, data)]
    return _text_table(("row", "published", "computed", "status"), described)


def render_suites(results: Sequence[SuiteResult], fmt: str) -> str:
    if fmt == "json":
        return to_json([
            {'name': r.name, 'passed': r.passed, 'checks': r.checks, 'failures': r.failures}
            for r in results
        ])
    data = [(r.name, r.checks, len(r.failures), "pass" if r.passed else "FAIL") for r in results]
    if fmt == "csv":
        return _csv(("suite", "checks", "failures", "status"), data)
    lines = [_text_table(("suite", "checks", "failures", "status"), data)]
    for r in results:
        for failure in r.failures:
            lines.append(f"  [{r.name}] {failure}")
    return "\n".join(lines)
