"""
Application Configuration
Contains version information and default computation limits
"""

# Application metadata
APP_NAME = "ER Pointlikes"
APP_VERSION = "1.0.0"
APP_AUTHOR = "ER Pointlikes Team"
APP_DESCRIPTION = "Compute and certify ER-pointlike subsets of finite semigroups"

# Build information
BUILD_NUMBER = 3
BUILD_DATE = "2026-10-16"

# Default guards (overridable through settings.json or CLI flags)
DEFAULT_MAX_ORDER = 8              # ambient order when a power semigroup is taken
DEFAULT_MAX_COMPLEX_SIZE = 4096    # members of any complex
DEFAULT_MAX_GROUP_SIZE = 100000    # elements of the global permutation group
DEFAULT_MAX_STATES = 200000        # states of the flow automaton
DEFAULT_MAX_TRANSITION_SIZE = 20000  # elements of any generated transformation semigroup
DEFAULT_MAX_CATALOG_ORDER = 4      # largest order the catalog enumerator accepts

# File names
SETTINGS_FILE = "settings.json"
SAMPLE_EXTENSION = ".sgp"
SAMPLES_DIRNAME = "samples"

# User data directory name (override with ERPOINTLIKES_HOME)
USER_DATA_DIRNAME = ".ERPointlikes"
USER_DATA_ENV = "ERPOINTLIKES_HOME"


def get_version_string() -> str:
    """
    Get formatted version string

    Returns:
        Version string with build number
    """
    return f"{APP_VERSION} (Build {BUILD_NUMBER})"


def get_about_text() -> str:
    """
    Get formatted about text for the application

    Returns:
        Multi-line about text
    """
    return f"""{APP_NAME}
Version {get_version_string()}

{APP_DESCRIPTION}

Build Date: {BUILD_DATE}
"""
