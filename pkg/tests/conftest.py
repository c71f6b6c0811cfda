"""Shared fixtures: the sample corpus build and an API test client."""

from __future__ import annotations

from pathlib import Path

import pytest

from cogkit import pipeline

SAMPLE_DIR = Path(__file__).resolve().parent.parent / "sample"


@pytest.fixture(scope="session")
def sample_dir() -> Path:
    return SAMPLE_DIR


@pytest.fixture(scope="session")
def sample_build(tmp_path_factory):
    """One full manifest build shared by every read-only test."""
    manifest = pipeline.load_manifest(SAMPLE_DIR / "manifest.json")
    manifest.annotation_output_path = str(
        tmp_path_factory.mktemp("build") / "needs_annotation.tsv"
    )
    return pipeline.run_build(manifest)


@pytest.fixture(scope="session")
def sample_store(sample_build):
    return sample_build[0]


@pytest.fixture(scope="session")
def sample_reports(sample_build):
    return sample_build[1]


@pytest.fixture()
def client(sample_store):
    from fastapi.testclient import TestClient

    from cogkit import api

    return TestClient(api.make_app(sample_store))
