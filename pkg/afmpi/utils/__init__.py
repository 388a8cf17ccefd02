from .rational import *
from .file_operations import *
