"""Slower randomized properties beyond the acceptance set."""

import pytest

import property_suite


@pytest.mark.parametrize("name", sorted(property_suite.EXTRA))
def test_extra_property(name):
    property_suite.EXTRA[name]()
