"""The README quick-tour snippet must stay executable."""

from __future__ import annotations

import re
from pathlib import Path


def test_readme_quick_tour_executes():
    text = Path(__file__).resolve().parent.parent.joinpath("README.md").read_text()
    blocks = re.findall(r"```python\n(.*?)```", text, flags=re.DOTALL)
    assert blocks, "README has no python example"
    namespace = {"dist_matrix": [[0.0, 1.0, 2.2], [1.0, 0.0, 1.4], [2.2, 1.4, 0.0]]}
    exec(blocks[0], namespace)
    assert namespace["coverage_report"] is not None
    assert namespace["bars"].kind == "SR"
