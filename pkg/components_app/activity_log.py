"""
Activity logging helper.

Records commands, verdicts and suite results as structured log events.
Nothing is persisted; the events go to the components_app logger.
"""

import logging

logger = logging.getLogger(__name__)


def log_activity(action: str, details: dict = None) -> dict:
    """
    Emit an activity event.

    Args:
        action: Short description, e.g. 'command_received', 'verdict_computed'.
        details: Optional dict with additional context.
    """
    entry = {"action": action, "details": details or {}}
    logger.info("Activity logged: [%s] details=%s", action, entry["details"])
    return entry
