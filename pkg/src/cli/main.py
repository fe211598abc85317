"""Command Line Interface
======================
Interface en ligne de commande: moyennes, distance ρ, rapports de bornes,
tableau de l'exemple numérique et suites de vérification.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

# Ajouter le dossier parent au path pour les imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from qam.bounds import full_report
from qam.config.config import OptimizerConfig, get_settings, setup_logging, validate_config
from qam.generators.builtins import generator_from_spec
from qam.means import qa_mean
from qam.referentials import (
    CORPUS_SELECTORS,
    EXIT_INPUT_ERROR,
    EXIT_OK,
    EXIT_PROPERTY_FAILURE,
    GENERATOR_FAMILIES,
    OUTPUT_FORMATS,
    SANDWICH_SLACK,
)
from qam.rho import estimate_rho
from qam.schemas.run import RunConfig
from qam.schemas.sample import make_sample
from qam.utils.errors import NumericError, PropertyViolation, QAMInputError, ValidationError
from qam.verification import VerificationService
from utils import (
    parse_float_list,
    parse_interval,
    render_mean,
    render_report,
    render_rho,
    render_suites,
    render_table_rows,
    sample_interval,
)

logger = logging.getLogger(__name__)


class QAMCommandRunner:
    """Exécute une commande du CLI décrite par un RunConfig."""

    def __init__(self, config: RunConfig):
        self.config = config
        self.logger = logging.getLogger(f"{__name__}.{self.__class__.__name__}")

    def optimizer_config(self) -> OptimizerConfig:
        return OptimizerConfig.from_settings(
            grid_n=self.config.grid_n,
            grid_m=self.config.grid_m,
            tol=self.config.tol,
        )

    def _pair(self):
        """Générateurs et intervalle validés avant tout calcul."""
        config = self.config
        if not (config.f and config.g and config.interval):
            raise ValidationError(f"La commande {config.command} requiert --f, --g et --interval")
        U = parse_interval(config.interval)
        return generator_from_spec(config.f, U), generator_from_spec(config.g, U), U

    def run(self) -> int:
        command = getattr(self, f"cmd_{self.config.command}")
        return command()

    def cmd_mean(self) -> int:
        """A[g](a, w) pour --gen, --values et --weights (uniformes par défaut)."""
        config = self.config
        if not config.gen or not config.values:
            raise ValidationError("La commande mean requiert --gen et --values")
        sample = make_sample(config.values, config.weights)
        U = parse_interval(config.interval) if config.interval else sample_interval(sample.values)
        g = generator_from_spec(config.gen, U)
        value = qa_mean(g, sample)
        print(render_mean(g.label, sample, value, config.format))
        return EXIT_OK

    def cmd_rho(self) -> int:
        f, g, U = self._pair()
        rho = estimate_rho(f, g, U, self.optimizer_config())
        print(render_rho((f.label, g.label), U, rho, self.config.format))
        return EXIT_OK

    def cmd_bounds(self) -> int:
        """
        Rapport complet; le rapport est affiché avant le contrôle d'encadrement.

        Returns:
            0 si max(bornes inf) ≤ ρ ≤ min(bornes sup), 1 sinon
        """
        f, g, U = self._pair()
        report = full_report(f, g, U, self.optimizer_config(), check=False)
        print(render_report(report, self.config.format))
        problems = report.sandwich_violations(SANDWICH_SLACK)
        for problem in problems:
            self.logger.error(problem)
        return EXIT_PROPERTY_FAILURE if problems else EXIT_OK

    def cmd_table(self) -> int:
        rows = VerificationService(self.optimizer_config()).table()
        print(render_table_rows(rows, self.config.format))
        outside = [row.name for row in rows if not row.within]
        if outside:
            self.logger.error(f"Rows outside tolerance: {', '.join(outside)}")
            return EXIT_PROPERTY_FAILURE
        return EXIT_OK

    def cmd_verify(self) -> int:
        results = VerificationService(self.optimizer_config()).run(self.config.corpus)
        print(render_suites(results, self.config.format))
        failed = [r.name for r in results if not r.passed]
        if failed:
            self.logger.error(f"Failed suites: {', '.join(failed)}")
            return EXIT_PROPERTY_FAILURE
        return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    families = "\n".join(f"  {name:<6}{text}" for name, text in GENERATOR_FAMILIES.items())
    parser = argparse.ArgumentParser(
        prog="qam-distance",
        description="Distance de Cargo-Shisha entre moyennes quasi-arithmétiques",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        allow_abbrev=False,
        epilog=f"""Générateurs (exp:s, pow:s, id, log, expr:<expression>):
{families}

Exemples d'utilisation:
  %(prog)s mean --gen exp:15 --values 0,1 --weights 0.5,0.5
  %(prog)s mean --gen "expr:ln(x)" --values 1,4
  %(prog)s rho --f exp:15 --g exp:20 --interval 0,1
  %(prog)s bounds --f pow:1 --g pow:3 --interval 1,2 --format table
  %(prog)s table
  %(prog)s verify --corpus exp
        """
    )
    parser.add_argument(
        '--version',
        action='version',
        version=f"%(prog)s {get_settings().app['version']}"
    )

    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    common.add_argument(
        '--format',
        choices=OUTPUT_FORMATS,
        default=None,
        help='Format de sortie (défaut: QAM_DEFAULT_FORMAT)'
    )
    common.add_argument('--grid-n', type=int, help='Points de grille en x et z (défaut: QAM_GRID_N)')
    common.add_argument('--grid-m', type=int, help='Points de grille en θ (défaut: QAM_GRID_M)')
    common.add_argument('--tol', type=float, help='Tolérance absolue de raffinement (défaut: 1e-9·|U|)')
    common.add_argument('-v', '--verbose', action='store_true', help='Logs détaillés sur stderr')

    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    subparsers.required = True

    mean = subparsers.add_parser('mean', parents=[common], allow_abbrev=False,
                                 help='Moyenne quasi-arithmétique A[g](a, w)')
    mean.add_argument('--gen', required=True, help='Spécification du générateur')
    mean.add_argument('--values', required=True, help='Valeurs a_1,...,a_n')
    mean.add_argument('--weights', help='Poids w_1,...,w_n (défaut: uniformes)')
    mean.add_argument('--interval', help='Domaine du générateur (défaut: [min a, max a])')

    for name, text in (('rho', 'Mesure de ρ(A[f], A[g]) sur U'),
                       ('bounds', 'Rapport des bornes inférieures et supérieures de ρ')):
        sub = subparsers.add_parser(name, parents=[common], allow_abbrev=False, help=text)
        sub.add_argument('--f', required=True, help='Premier générateur')
        sub.add_argument('--g', required=True, help='Second générateur')
        sub.add_argument('--interval', required=True, help="Intervalle U: 'lo,hi', '(lo,hi)', '[lo,hi)'...")

    subparsers.add_parser('table', parents=[common], allow_abbrev=False,
                          help="Tableau de l'exemple exp(15) / exp(20) sur (0, 1)")

    verify = subparsers.add_parser('verify', parents=[common], allow_abbrev=False,
                                   help='Suites de propriétés sur le corpus')
    verify.add_argument('--corpus', choices=CORPUS_SELECTORS, default='default', help='Corpus de paires')
    return parser


def make_run_config(args: argparse.Namespace) -> RunConfig:
    """Namespace argparse → RunConfig validé."""
    values = getattr(args, 'values', None)
    weights = getattr(args, 'weights', None)
    return RunConfig(
        command=args.command,
        f=getattr(args, 'f', None),
        g=getattr(args, 'g', None),
        gen=getattr(args, 'gen', None),
        interval=getattr(args, 'interval', None),
        values=parse_float_list(values, 'values') if values else None,
        weights=parse_float_list(weights, 'weights') if weights else None,
        grid_n=args.grid_n,
        grid_m=args.grid_m,
        tol=args.tol,
        format=args.format or get_settings().output['default_format'],
        corpus=getattr(args, 'corpus', 'default'),
    )


def main(argv: Optional[Sequence[str]] = None) -> None:
    """Point d'entrée principal du CLI."""
    parser = build_parser()
    args = parser.parse_args(argv)

    setup_logging('DEBUG' if args.verbose else None)
    for problem in validate_config():
        logger.warning(f"Configuration: {problem}")

    try:
        config = make_run_config(args)
        code = QAMCommandRunner(config).run()
    except PropertyViolation as e:
        print(f"Erreur: {e}", file=sys.stderr)
        code = EXIT_PROPERTY_FAILURE
    except (QAMInputError, ValueError) as e:
        print(f"Erreur d'entrée: {e}", file=sys.stderr)
        code = EXIT_INPUT_ERROR
    except NumericError as e:
        print(f"Erreur numérique: {e}", file=sys.stderr)
        code = EXIT_PROPERTY_FAILURE
    sys.exit(code)


__all__ = ['QAMCommandRunner', 'build_parser', 'make_run_config', 'main']
