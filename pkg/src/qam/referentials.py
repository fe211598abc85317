"""
Référentiels du calcul de distance entre moyennes quasi-arithmétiques.
Contient les valeurs par défaut des grilles et tolérances, le corpus de
vérification et les valeurs de référence de l'exemple numérique exp(15)/exp(20).
"""

# Recherche de ρ : grille N×N×M puis raffinement par section dorée
DEFAULT_GRID_N = 64
DEFAULT_GRID_M = 64
DEFAULT_TOL_REL = 1e-9
DEFAULT_MAX_REFINE_ITERS = 200
DEFAULT_THETA_MIN = 1e-6

# Queues logarithmiques de la grille en θ sous theta_min et au-dessus de 1 - theta_min
THETA_FLOOR = 1e-15
THETA_TAIL_POINTS = 24

# Résolutions et tolérances numériques
NUMERIC_DEFAULTS = {
    'scan_points': 4096,        # balayage des extrema (oscillation, normes sup)
    'monotone_points': 1024,    # contrôle de monotonie des expressions
    'verify_points': 1024,      # vérification des certificats de séparation
    'margin_rel': 1e-9,         # marge μ = margin_rel·|U| sur les bords ouverts
    'inverse_tol_rel': 1e-13,   # tolérance de bissection en x
    'star_norm_rtol': 1e-10,    # accord entre deux raffinements de la primitive
    'phi_grid': 64,             # extrémités candidates des sous-intervalles V
    'sup_grid': 128,            # grille (c, δ) de la borne inférieure en sup
    'pales_grid': 40,           # grille des triplets (x, y, z)
}

# Suites de propriétés
VERIFICATION_DEFAULTS = {
    'seed': 20170101,
    'trials': 1000,
    'partition_trials': 100,
}

# Tolérances des suites
SANDWICH_SLACK = 1e-9
MEAN_TOLERANCE = 1e-12
PARTITION_SLACK = 1e-9

# Familles de générateurs (syntaxe du CLI)
GENERATOR_FAMILIES = {
    "exp": "e_s(x) = exp(s·x), e_0(x) = x",
    "pow": "p_s(x) = x^s, p_0(x) = ln x (domaine ⊂ (0, ∞))",
    "id": "identité, moyenne arithmétique",
    "log": "logarithme, moyenne géométrique (domaine ⊂ (0, ∞))",
    "expr": "expression en x : + - * / ^ exp ln",
}

# Corpus de vérification
CORPUS_EXP_PARAMETERS = (-20.0, -15.0, -5.0, -1.0, 0.0, 1.0, 5.0, 15.0, 20.0)
CORPUS_EXP_INTERVAL = "(0,1)"
CORPUS_POWER_PARAMETERS = (-1.0, 0.0, 1.0, 2.0, 3.0)
CORPUS_POWER_INTERVAL = "[1,2]"
CORPUS_EXPRESSIONS = (
    "x + x^3/3",
    "exp(0.5*x) + x",
    "ln(1+x) + x^2",
)
CORPUS_SELECTORS = ("default", "exp", "power", "all")

# Paires de l'oracle force brute 256³
ORACLE_PAIRS = (
    ("exp:15", "exp:20", "(0,1)"),
    ("exp:0", "exp:1", "(0,1)"),
    ("exp:-5", "exp:5", "(0,1)"),
    ("pow:1", "pow:3", "[1,2]"),
    ("pow:-1", "pow:2", "[1,2]"),
)
ORACLE_GRID = 256
ORACLE_TOLERANCE = 1e-3

# Exemple numérique exp(15) / exp(20) sur (0,1)
WORKED_EXAMPLE_PAIR = ("exp:15", "exp:20")
WORKED_EXAMPLE_INTERVAL = "(0,1)"
WORKED_EXAMPLE_CERTIFICATE = {'phi': 1.0, 'K': 20.0, 'delta': 5.0}

# Lignes du tableau: (nom, description, valeur publiée, contrôle)
# contrôle = ('band', lo, hi) ou ('relative', tolérance)
WORKED_EXAMPLE_TABLE = (
    ("rho", "valeur réelle", 0.212, ('band', 0.207, 0.217)),
    ("lower_main", "borne principale", 3.19184e-17, ('relative', 1e-3)),
    ("lower_estim", "estimation explicite", 5.71442e-8, ('relative', 1e-2)),
    ("box_lower", "borne par séparation", 0.0143, ('band', 0.0138, 0.0148)),
    ("box_lower_simplified", "borne par séparation simplifiée", 0.011, ('band', 0.0105, 0.0117)),
)

# Constantes de l'estimation explicite
ESTIM_SEARCH_BRACKET = (1e-6, 10.0)
ESTIM_SEARCH_TOL = 1e-12
ESTIM_STATIONARITY_TOL = 1e-10

# Noms des bornes du rapport
LOWER_BOUND_NAMES = (
    "cargo_shisha_lower",
    "lower_main",
    "lower_main_sup",
    "lower_main_partitioned",
    "lower_estim",
    "box_lower",
    "box_lower_simplified",
)
UPPER_BOUND_NAMES = (
    "cargo_shisha_upper",
    "upper_star_norm",
    "upper_universal_log",
    "upper_universal_quadratic",
)

# Contrôle de Páles (indicatif)
PALES_DEFAULT_C = 0.99
PALES_SKIP_REL = 1e-14

# Plafond du nombre de cellules de la borne partitionnée
PARTITION_MAX_CELLS = 64

# Codes de sortie du CLI
EXIT_OK = 0
EXIT_PROPERTY_FAILURE = 1
EXIT_INPUT_ERROR = 2

OUTPUT_FORMATS = ("json", "csv", "table")
