"""Exception types shared across the package."""


class ConfigError(ValueError):
    """A model parameter or manifest field violates its constraints."""


class TruncationOverflowError(RuntimeError):
    """A moment evaluation needs Fock indices beyond the padded grid.

    Raised instead of silently dropping weight; enlarge the ladder-power
    padding (or lower the requested operator order) to recover.
    """


class ManifestError(ConfigError):
    """One or more manifest fields failed validation.

    Carries a list of ``(field, reason)`` pairs so callers can report
    every problem at once instead of the first one hit.
    """

    def __init__(self, problems):
        self.problems = list(problems)
        lines = "; ".join(f"{field}: {reason}" for field, reason in self.problems)
        super().__init__(f"invalid manifest ({lines})")
