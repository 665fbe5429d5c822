#!/usr/bin/env python
"""归约算子演算测试的公共 fixture。"""
# ruff: noqa: E402

import sys
from collections.abc import AsyncGenerator, Callable, Generator
from pathlib import Path
from typing import Any

import pytest
from httpx import ASGITransport, AsyncClient

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from src.api.main import app
from src.infra.config.settings import get_settings
from src.operators.core_linear import OrderedGenSet, Vector
from src.operators.lattice import OperatorFamily
from src.operators.reduced_basis import ReductionOperator
from src.presentation.presentation import Presentation, make_presentation

DATA_DIR = Path(__file__).resolve().parent / "data"


@pytest.fixture(autouse=True)
def _fresh_settings() -> Generator[None, None, None]:
    """环境变量在用例间隔离：每个用例前后清空配置缓存。"""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture(scope="function")
async def app_client() -> AsyncGenerator[AsyncClient, None]:
    transport = ASGITransport(app=app)
    async with AsyncClient(transport=transport, base_url="http://testserver") as client:
        yield client


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def load_document(data_dir: Path) -> Callable[[str], Any]:
    import json

    def _load(name: str) -> Any:
        return json.loads((data_dir / name).read_text(encoding="utf-8"))

    return _load


# =============================================================================
# g1 < g2 < g3 < g4 上的算子对 P = (T1, T2)
# =============================================================================


@pytest.fixture
def ambient() -> OrderedGenSet:
    return OrderedGenSet(("g1", "g2", "g3", "g4"))


@pytest.fixture
def vec(ambient: OrderedGenSet) -> Callable[..., Vector]:
    """``vec(g4=1, g3=-1)`` 形式的向量构造器。"""

    def _make(**coefficients: Any) -> Vector:
        return ambient.vector([(value, label) for label, value in coefficients.items()])

    return _make


@pytest.fixture
def operator_factory(ambient: OrderedGenSet) -> Callable[..., ReductionOperator]:
    """``operator_factory(g2="g1", g4="g3")``：被移动的生成元映到给定标签（或零）。"""

    def _make(**images: str | None) -> ReductionOperator:
        mapping = {
            ambient.index(label): (
                ambient.zero() if target is None else ambient.generator(ambient.index(target))
            )
            for label, target in images.items()
        }
        return ReductionOperator(ambient, mapping)

    return _make


@pytest.fixture
def t1(operator_factory: Callable[..., ReductionOperator]) -> ReductionOperator:
    """T1: g2 ↦ g1, g4 ↦ g3。"""
    return operator_factory(g2="g1", g4="g3")


@pytest.fixture
def t2(operator_factory: Callable[..., ReductionOperator]) -> ReductionOperator:
    """T2: g4 ↦ g2。"""
    return operator_factory(g4="g2")


@pytest.fixture
def pair_family(t1: ReductionOperator, t2: ReductionOperator) -> OperatorFamily:
    return OperatorFamily.of(t1, t2)


@pytest.fixture
def pair_meet(operator_factory: Callable[..., ReductionOperator]) -> ReductionOperator:
    """∧P：g2、g3、g4 都映到 g1。"""
    return operator_factory(g2="g1", g3="g1", g4="g1")


@pytest.fixture
def c1(operator_factory: Callable[..., ReductionOperator]) -> ReductionOperator:
    return operator_factory(g3="g1")


@pytest.fixture
def c2(operator_factory: Callable[..., ReductionOperator]) -> ReductionOperator:
    return operator_factory(g3="g2")


# =============================================================================
# 表示
# =============================================================================


@pytest.fixture
def braid_presentation() -> Presentation:
    """⟨x, y, z | yz → x, zx → xy⟩ 截断到长度 3。"""
    return make_presentation(
        ("x", "y", "z"),
        [("yz", [(1, "x")]), ("zx", [(1, "xy")])],
        3,
    )
