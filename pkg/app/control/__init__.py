from .controllers import first_order_control, second_order_control
from .gains import Gains, check_gains, hurwitz_margin, lemma6_stable, validate_gains_second_order

__all__ = [
    "Gains",
    "check_gains",
    "first_order_control",
    "hurwitz_margin",
    "lemma6_stable",
    "second_order_control",
    "validate_gains_second_order",
]
