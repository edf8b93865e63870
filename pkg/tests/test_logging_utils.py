"""
Tests for the context-carrying logger.
"""

import logging

from utils.logging_utils import ContextLogger


class TestContextLogger:
    """Tests for bound key/value context."""

    def test_bind_appends_context(self, caplog):
        caplog.set_level(logging.DEBUG, logger="ore_kernel")
        ContextLogger("search").bind(k=1).warning("m")
        assert caplog.records[-1].getMessage() == "m [Context: k=1]"

    def test_bind_leaves_parent_unchanged(self, caplog):
        caplog.set_level(logging.DEBUG, logger="ore_kernel")
        parent = ContextLogger("search", {"set": "[2]"})
        child = parent.bind(degree=4)
        assert parent.context == {"set": "[2]"}
        assert child.context == {"set": "[2]", "degree": 4}
        parent.info("plain")
        assert caplog.records[-1].getMessage() == "plain [Context: set=[2]]"

    def test_debug_respects_level(self, caplog):
        caplog.set_level(logging.WARNING, logger="ore_kernel")
        ContextLogger("search").bind(k=1).debug("hidden")
        assert not [r for r in caplog.records if "hidden" in r.getMessage()]
