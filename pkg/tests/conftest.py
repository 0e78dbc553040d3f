from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from slicecohesion import build_pdg, load  # noqa: E402

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"

_ACCEPTANCE: list[tuple[str, bool, str]] = []


def read_fixture(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def professional_src() -> str:
    return read_fixture("professional.mj")


@pytest.fixture(scope="session")
def undergrad_src() -> str:
    return read_fixture("undergrad.mj")


@pytest.fixture(scope="session")
def undergrad_no3_src() -> str:
    return read_fixture("undergrad_without_line3.mj")


def pdg_of(src: str, method: str | None = None):
    program = load(src)
    return build_pdg(program, method or program.method_names[0])


def node_by_label(pdg, label: str) -> int:
    """Id of the unique node whose label is ``label``."""
    hits = [n.id for n in pdg.body_nodes if n.label == label]
    assert len(hits) == 1, (label, hits)
    return hits[0]


def nodes_by_label(pdg, *labels: str) -> set[int]:
    return {node_by_label(pdg, lab) for lab in labels}


@pytest.fixture
def acceptance_record():
    def record(criterion: str, passed: bool, detail: str = "") -> None:
        _ACCEPTANCE.append((criterion, passed, detail))
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  [{detail}]" if detail else ""))
