from kempe_recon.data_sources.cctt_utils import parse_cctt
from kempe_recon.data_sources.model import UtpInstance

TOY_NAME = "toy"

# Course blocks in the order used by the enumeration table: TecCos, ArcTec, SceCosC, Geotec.
TOY_BLOCK_ALIASES = {"T": "TecCos", "A": "ArcTec", "S": "SceCosC", "G": "Geotec"}

TOY_CTT = """\
Name: Toy
Courses: 4
Rooms: 3
Days: 5
Periods_per_day: 4
Curricula: 2
Constraints: 8

COURSES:
SceCosC Ocra 3 3 30
ArcTec Indaco 3 2 42
TecCos Rosa 5 4 40
Geotec Scarlatti 5 4 18

ROOMS:
A 32
B 50
C 40

CURRICULA:
Cur1 3 SceCosC ArcTec TecCos
Cur2 2 TecCos Geotec

UNAVAILABILITY_CONSTRAINTS:
TecCos 2 0
TecCos 2 1
TecCos 3 2
TecCos 3 3
ArcTec 4 0
ArcTec 4 1
ArcTec 4 2
ArcTec 4 3

END.
"""


def load_toy_instance() -> UtpInstance:
    return parse_cctt(TOY_CTT, name=TOY_NAME)
