from jinja2 import Environment, PackageLoader, StrictUndefined, TemplateNotFound

from ..logger import logger
from ..utils.rational import as_percent, format_fraction

env = Environment(
    loader=PackageLoader("afmpi", "templates"),
    keep_trailing_newline=True,
    trim_blocks=True,
    lstrip_blocks=True,
    undefined=StrictUndefined,
)
env.filters["pct"] = lambda value: "-" if value is None else as_percent(value)
env.filters["dec"] = lambda value, places=3: "-" if value is None else format_fraction(value, places)


def render(template_name: str, **context) -> str:
    """Render one of the packaged text templates."""
    try:
        template = env.get_template(template_name)
        return template.render(**context)
    except TemplateNotFound:
        logger.error(f"Template '{template_name}' not found in afmpi/templates.")
        raise
    except Exception as e:
        logger.error(f"Error rendering template '{template_name}': {e}")
        raise
