from .manifest import MANIFEST_NAME, build_manifest, run_timestamp
from .rows import (
    attributed_rows,
    check_rows,
    crosstab_rows,
    decomposition_group_row,
    decomposition_rows,
    fraction_text,
    rates_rows,
    subgroup_rows,
    summary_rows,
    sweep_rows,
    undefined_decomposition_rows,
    unit_rows,
)
from .text import render
from .writer import ReportWriter, rows_to_csv
