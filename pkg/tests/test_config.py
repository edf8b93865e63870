"""
Tests for kernel configuration.
"""

import pytest
from pydantic import ValidationError

from utils.config import DEFAULT_CONFIG, KernelConfig


class TestKernelConfig:
    """Test suite for budgets read from the environment."""

    def test_environment(self):
        config = KernelConfig.from_env({"ORE_BUDGET_DEGREE": " 5 "})
        assert config.budget_degree == 5
        assert config.gb_pair_limit == DEFAULT_CONFIG.gb_pair_limit

    def test_override_wins(self):
        environ = {"ORE_BUDGET_EXPONENT": "3"}
        config = KernelConfig.from_env(environ, budget_exponent=7, budget_degree=None)
        assert config.budget_exponent == 7
        assert config.budget_degree == DEFAULT_CONFIG.budget_degree

    def test_blank_values_ignored(self):
        config = KernelConfig.from_env({"ORE_GB_PAIR_LIMIT": "  "})
        assert config.gb_pair_limit == DEFAULT_CONFIG.gb_pair_limit

    @pytest.mark.parametrize("value", ["0", "-2", "many"])
    def test_invalid_budget(self, value):
        with pytest.raises(ValidationError):
            KernelConfig.from_env({"ORE_BUDGET_DEGREE": value})
