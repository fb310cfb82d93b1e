"""Command handlers support: moment-problem input, report rendering and the acceptance checks."""
