"""Closed-form Gauss sum mathematics: phases, schedules, signals, trial factors."""
