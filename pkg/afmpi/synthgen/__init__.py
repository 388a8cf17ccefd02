from .config import BaseRates, GenderGaps, GeneratorConfig, demo_config, khas_like_config, load_generator_config
from .generator import GeneratedPopulation, generate, write_population
from .fixtures import mini_fixture, write_fixture
