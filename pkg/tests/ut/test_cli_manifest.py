from taserial import config
from taserial.cli.manifest import closed_system_violations, is_manifest, load_config
from taserial.exception import ConfigError, InputError, ParseError
from taserial.lang import parse_programs
from taserial.txctl.enum import PolicyKind, WaitMode
from tests.ut import base_asm, base_cli


MANIFEST = """
# deadlock-prone pair
[run]
seed = 7
max_steps = 300
wait_mode = suspend

[policies]
victim = all

[programs]
files = deadlock.asm

[registration]
B = 5
"""


class TestCLIManifest(base_cli.BaseCLITest):

    def setUp(self):
        super().setUp()
        self.write('deadlock.asm', base_asm.DEADLOCK)
        self._manifest = self.write('run.ini', MANIFEST)

    def test_is_manifest(self):
        self.assertTrue(is_manifest(MANIFEST))
        self.assertFalse(is_manifest(base_asm.COUNTER))
        self.assertFalse(is_manifest('# only a comment\n'))

    def test_manifest(self):
        run_config = load_config(self._manifest)
        self.assertEqual(run_config.names(), ('A', 'B'))
        self.assertEqual(run_config.seed, 7)
        self.assertEqual(run_config.max_steps, 300)
        self.assertEqual(run_config.wait_mode, WaitMode.Suspend)
        self.assertEqual(run_config.policies[PolicyKind.Victim], 'all')
        self.assertEqual(run_config.policies[PolicyKind.Commit], config.policies['commit'])
        self.assertEqual(run_config.registration['B'], 5)
        self.assertEqual(run_config.domain_size, config.run['domain_size'])

    def test_flags_override_manifest(self):
        run_config = load_config(self._manifest, dict(seed=11, max_steps=None, wait_mode=WaitMode.Retry),
                                 {PolicyKind.Victim: 'random'})
        self.assertEqual(run_config.seed, 11)
        self.assertEqual(run_config.max_steps, 300)
        self.assertEqual(run_config.wait_mode, WaitMode.Retry)
        self.assertEqual(run_config.policies[PolicyKind.Victim], 'random')

    def test_program_file(self):
        run_config = load_config(self.write('counter.asm', base_asm.COUNTER))
        self.assertEqual(run_config.names(), ('A', 'B'))
        self.assertEqual(run_config.max_steps, config.run['max_steps'])
        self.assertEqual(dict(run_config.registration), {})

    def test_missing_file(self):
        with self.assertRaises(ConfigError):
            load_config(self.path('missing.ini'))

    def test_file_not_utf8(self):
        path = self.path('bad.ini')
        with open(path, 'wb') as fd:
            fd.write(b'[run]\nseed = \xff\xfe\n')
        with self.assertRaises(ConfigError):
            load_config(path)

    def test_missing_program_file(self):
        with self.assertRaises(ConfigError):
            load_config(self.write('broken.ini', '[programs]\nfiles = nowhere.asm\n'))

    def test_no_programs(self):
        with self.assertRaises(ConfigError):
            load_config(self.write('empty.ini', '[run]\nseed = 1\n'))

    def test_invalid_integer(self):
        with self.assertRaises(ConfigError):
            load_config(self.write('bad.ini', '[run]\nseed = seven\n[programs]\nfiles = deadlock.asm\n'))

    def test_unknown_option(self):
        with self.assertRaises(ConfigError):
            load_config(self.write('bad.ini', '[run]\nspeed = 2\n[programs]\nfiles = deadlock.asm\n'))

    def test_unknown_policy(self):
        with self.assertRaises(InputError):
            load_config(self.write('bad.ini', '[policies]\nvictim = oldest\n[programs]\nfiles = deadlock.asm\n'))

    def test_invalid_wait_mode(self):
        with self.assertRaises(InputError):
            load_config(self._manifest, dict(wait_mode='block'))

    def test_registration_of_unknown_machine(self):
        with self.assertRaises(ConfigError):
            load_config(self.write('bad.ini', '[programs]\nfiles = deadlock.asm\n[registration]\nZ = 1\n'))

    def test_duplicate_machines(self):
        with self.assertRaises(ConfigError):
            load_config(self.write('dup.ini', '[programs]\nfiles = deadlock.asm, deadlock.asm\n'))

    def test_parse_error(self):
        with self.assertRaises(ParseError):
            load_config(self.write('bad.asm', 'machine A\n    rule: x :=\n'))

    def test_closed_system(self):
        self.assertEqual(closed_system_violations(parse_programs(base_asm.COUNTER)), [])
        self.assertEqual(closed_system_violations(parse_programs(base_asm.PRODUCER_CONSUMER)), [])
        violations = closed_system_violations(parse_programs(base_asm.NEVER_DONE))
        self.assertEqual(violations, [('L', 'x', 'shared function not shared with another machine')])

    def test_closed_system_warning(self):
        with self.assertLogs(level='WARNING') as logs:
            load_config(self.write('lonely.asm', base_asm.NEVER_DONE))
        self.assertIn('Closed system assumption violated', logs.output[0])
