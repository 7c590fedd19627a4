"""Test suite for the bot."""

