"""
Canonical six-household fixture. Scores below are in 120ths.

H01  non-poor household (24) with a poor woman (69)
H02  poor household (41) with a non-poor man (35, just under 36)
H03  single-man household
H04  widow-headed, adult daughter aged exactly 18, unenrolled 6-year-old
H05  the man scoring exactly 3/8 (45)
H06  poor female-headed household (75)
"""

from pathlib import Path

from ..utils.file_operations import write_text
from .generator import GeneratedPopulation

HOUSEHOLDS_CSV = """\
hh_id,head_sex,has_electricity,floor_material,toilet,water_source,cooking_fuel,durables_owned,owns_four_wheeler,owns_agri_land,owns_residence
H01,male,1,finished,private,piped,lpg,fan;tv;cell_phone,0,1,1
H02,male,1,finished,none,piped,lpg,fan;tv,0,0,0
H03,male,1,earth_mud,shared,surface,dung,none,0,0,1
H04,female,1,finished,private,borewell,wood,tv;cycle,0,1,1
H05,male,1,finished,private,piped,lpg,fan;cell_phone,0,0,1
H06,female,0,earth_mud,none,tanker,charcoal,cell_phone,0,1,0
"""

PERSONS_CSV = """\
person_id,hh_id,sex,age,marital_status,education_years,owns_residence_any,owns_agri_land_any,enrolled,is_female_respondent,respondent_rank,market_alone,health_facility_alone,natal_home_alone,outside_village_alone,own_health_decision
H01-1,H01,male,45,currently_married,10,1,1,,0,,,,,,
H01-2,H01,female,40,currently_married,3,0,0,,1,1,0,0,1,0,with_permission
H01-3,H01,female,7,never_married,1,0,0,1,0,,,,,,
H02-1,H02,male,52,currently_married,9,0,0,,0,,,,,,
H02-2,H02,female,47,currently_married,2,0,0,,1,1,0,1,1,1,self
H03-1,H03,male,60,widowed,0,1,0,,0,,,,,,
H04-1,H04,female,65,widowed,0,1,1,,1,1,1,1,1,0,someone_else
H04-2,H04,female,18,never_married,10,0,0,,0,,,,,,
H04-3,H04,male,6,never_married,0,0,0,0,0,,,,,,
H05-1,H05,male,35,currently_married,3,0,0,,0,,,,,,
H05-2,H05,female,33,currently_married,6,1,0,,1,1,1,1,1,1,self
H05-3,H05,male,8,never_married,2,0,0,1,0,,,,,,
H06-1,H06,female,38,currently_married,0,0,0,,1,1,0,0,0,0,with_permission
H06-2,H06,male,42,currently_married,0,0,1,,0,,,,,,
"""


def mini_fixture() -> GeneratedPopulation:
    return GeneratedPopulation(HOUSEHOLDS_CSV, PERSONS_CSV)


def write_fixture(out_dir) -> tuple[Path, Path]:
    out_dir = Path(out_dir)
    return (
        write_text(out_dir / "households.csv", HOUSEHOLDS_CSV),
        write_text(out_dir / "persons.csv", PERSONS_CSV),
    )
