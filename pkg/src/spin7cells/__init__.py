"""Octonions, the Spin(7) cell structure and its category ledgers."""
from .cayley import MultTable, default_table, load_mult_table, mul
from .charts import CellLabel, char_map, factorize
from .cellcomplex import cell_census, filtration_ledger, poincare_polynomial
from .cohomology import ls_category_report
from .groups import is_g2, is_spin7, vector_rep

__version__ = "0.1.0"
