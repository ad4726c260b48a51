from __future__ import annotations

from pathlib import Path

import pytest

from depsketch import Coordinate, KnowledgeBase

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
JDK8 = Coordinate.parse("jdk:java8:8")
DISTRACTOR = Coordinate.parse("com.regexkit:regexkit:1.2")


def build_fixture_kb() -> KnowledgeBase:
    kb = KnowledgeBase()
    kb.ingest_class_listing(FIXTURES / "jdk8_classes.txt", JDK8)
    kb.ingest_class_listing(FIXTURES / "regexkit_classes.txt", DISTRACTOR)
    return kb


@pytest.fixture
def fixture_kb() -> KnowledgeBase:
    return build_fixture_kb()


@pytest.fixture
def snippet_source() -> str:
    return (FIXTURES / "snippet.java").read_text(encoding="utf-8")
