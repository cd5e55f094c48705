"""Certify connectedness of clash-free timetable search spaces under Kempe-exchanges."""

__version__ = "0.1.0"
