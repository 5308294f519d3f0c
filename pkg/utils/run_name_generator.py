from datetime import datetime
from config.config_manager import ConfigManager

def generate_run_name(config_manager: ConfigManager, subcommand: str) -> str:
    """
    Generates a unique and descriptive name for one run, used for log files only.

    Args:
        config_manager (ConfigManager): Config manager instance to retrieve key parameters.
        subcommand (str): The experiment being run.

    Returns:
        str: A name with subcommand, profile, reaction, grid sizes and timestamp.
    """
    profile = config_manager.get_profile_kind()
    profile_name = profile.name if profile else "DEFAULT"
    reaction = config_manager.get_reaction_kind().name
    discretization = config_manager.get_discretization()
    nx = discretization.get('nx', 'default')
    nz = discretization.get('nz', 'default')
    start_time = datetime.now().strftime("%Y%m%d_%H%M")

    return f"run_{subcommand}_profile{profile_name}_reaction{reaction}_grid{nx}x{nz}_{start_time}"
