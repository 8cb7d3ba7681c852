# CLI module for levrecon
