from __future__ import annotations

from collections.abc import Callable
from typing import Any

from httpx import AsyncClient

Loader = Callable[[str], Any]


async def test_check_pair_family(app_client: AsyncClient, load_document: Loader) -> None:
    response = await app_client.post(
        "/v1/presentations/check",
        json={"document": load_document("braid.json"), "options": {"family": "pair"}},
    )
    assert response.status_code == 200
    data = response.json()
    assert data["degree_bound"] == 3
    assert data["verdict"] is False
    assert data["result"]["obstructions"] == ["yxy"]


async def test_complete_then_normal_form(app_client: AsyncClient, load_document: Loader) -> None:
    document = load_document("braid.json")
    completed = await app_client.post("/v1/presentations/complete", json={"document": document})
    assert completed.status_code == 200
    presentation = completed.json()["result"]["presentation"]

    nf = await app_client.post(
        "/v1/presentations/nf",
        json={"document": presentation, "options": {"polynomial": "yzx + yz"}},
    )
    assert nf.status_code == 200
    assert nf.json()["result"]["normal_form"] == "xx + x"
    assert nf.json()["warnings"] == []


async def test_rule_longer_than_degree_is_422(app_client: AsyncClient) -> None:
    document = {
        "alphabet": ["x", "y", "z"],
        "degree": 2,
        "rules": [{"lhs": "yyz", "rhs": [["1", "yx"]]}],
    }
    response = await app_client.post("/v1/presentations/check", json={"document": document})
    assert response.status_code == 422
    assert "degree" in response.json()["detail"]["message"]


async def test_misoriented_rule_is_422(app_client: AsyncClient) -> None:
    document = {
        "alphabet": ["x", "y"],
        "degree": 2,
        "rules": [{"lhs": "x", "rhs": [["1", "yy"]]}],
    }
    response = await app_client.post("/v1/presentations/check", json={"document": document})
    assert response.status_code == 422
    assert response.json()["detail"]["position"] == "rules"
