import logging

from taserial import config
from tests.ut import base


class TestConfig(base.BaseTest):

    def setUp(self):
        super().setUp()
        level = logging.getLogger().level
        self.addCleanup(logging.getLogger().setLevel, level)
        self.addCleanup(config.Logging.enable)

    def test_singleton(self):
        self.assertIs(config.Logging.get(), config.Logging.get())
        with self.assertRaises(Exception):
            config.Logging()

    def test_set_level(self):
        config.Logging.get().setLevel(logging.ERROR)
        self.assertEqual(logging.getLogger().level, logging.ERROR)

    def test_disable(self):
        config.Logging.get().disable()
        self.assertTrue(logging.getLogger().disabled)
        config.Logging.get().enable()
        self.assertFalse(logging.getLogger().disabled)

    def test_defaults(self):
        self.assertEqual(config.run['wait_mode'], 'retry')
        self.assertEqual(config.run['max_steps'], 200)
        self.assertEqual(config.policies['victim'], 'shortest-history')
        self.assertEqual(config.checker['brute_force_limit'], 4)
        self.assertEqual(config.controller['restart_limit'], 3)
