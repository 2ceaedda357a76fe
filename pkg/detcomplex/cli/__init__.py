from .app import app
from . import commands
