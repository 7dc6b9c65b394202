# -*- coding: utf-8 -*-
import logging

import pytest
from hypothesis import settings

from balcreasoner.constants import TRACE_LOGGER

settings.register_profile('balc', max_examples=25, deadline=None)
settings.load_profile('balc')


@pytest.fixture(autouse=True)
def trace_logger():
    """Undo what ``configure_logging`` does to the trace logger, so tests see it in its import state."""
    logger = logging.getLogger(TRACE_LOGGER)
    handlers, level, propagate = list(logger.handlers), logger.level, logger.propagate
    yield logger
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    for handler in handlers:
        logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = propagate
