"""aftlab: adjoint functor theorems checked on finite categories and posets."""
from aftlab.config import TOOL_VERSION as __version__
