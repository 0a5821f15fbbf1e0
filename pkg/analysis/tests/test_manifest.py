import json
import os
from tempfile import TemporaryDirectory

from django.test import SimpleTestCase

from analysis.manifest import ManifestError, load_manifest, parse_fps
from videoio.tests import write_file


CSV_HEADER = 'path,format,video_id,encoder_id,use_case,bitrate_kbps,width,height,fps\n'


class ParseFpsTest(SimpleTestCase):
    def test_forms(self):
        self.assertEqual(parse_fps('30000:1001'), (30000, 1001))
        self.assertEqual(parse_fps('24/1'), (24, 1))
        self.assertEqual(parse_fps('50'), (50, 1))
        self.assertEqual(parse_fps(60), (60, 1))
        self.assertIsNone(parse_fps(''))

    def test_bad(self):
        with self.assertRaises(ManifestError):
            parse_fps('fast')


class LoadManifestTest(SimpleTestCase):
    def setUp(self):
        self.tmp = TemporaryDirectory()
        self.dir = self.tmp.name

    def tearDown(self):
        self.tmp.cleanup()

    def manifest(self, name, text):
        return write_file(os.path.join(self.dir, name), text.encode('utf-8'))

    def test_csv(self):
        path = self.manifest('grid.csv', CSV_HEADER +
                             'clips/a.y4m,,hera,x264,fast,2000,,,\n'
                             'b.yuv,,hera,x264,fast,4000,64,32,30000:1001\n')
        manifest = load_manifest(path)
        first, second = manifest.streams
        self.assertEqual(first.path, os.path.join(self.dir, 'clips', 'a.y4m'))
        self.assertEqual(first.format, 'y4m')
        self.assertIsNone(first.geometry)
        self.assertEqual(second.format, 'raw')
        self.assertEqual((second.geometry.width, second.geometry.height), (64, 32))
        self.assertEqual(second.geometry.fps_num, 30000)
        self.assertEqual(second.bitrate, 4000.0)
        self.assertEqual(second.describe(), 'hera/x264/fast@4000')
        self.assertIsNone(manifest.model)

    def test_json(self):
        data = {
            'model': 'model.json',
            'output_dir': 'out',
            'jobs': 4,
            'streams': [{'path': '/data/a.y4m', 'video_id': 'hera',
                         'encoder_id': 'x265', 'use_case': 'ripping',
                         'bitrate_kbps': 12000}],
        }
        manifest = load_manifest(self.manifest('grid.json', json.dumps(data)))
        self.assertEqual(manifest.model, os.path.join(self.dir, 'model.json'))
        self.assertEqual(manifest.output_dir, os.path.join(self.dir, 'out'))
        self.assertEqual(manifest.jobs, 4)
        self.assertEqual(manifest.streams[0].path, '/data/a.y4m')
        self.assertEqual(manifest.streams[0].key, ('hera', 'x265', 'ripping'))

    def test_raw_geometry_from_defaults(self):
        path = self.manifest('grid.csv', CSV_HEADER +
                             'b.yuv,raw,hera,x264,fast,4000,,,\n')
        with self.assertRaises(ManifestError):
            load_manifest(path)
        manifest = load_manifest(path, {'width': 96, 'height': 64,
                                        'fps': (24, 1)})
        geometry = manifest.streams[0].geometry
        self.assertEqual((geometry.width, geometry.height, geometry.fps_num),
                         (96, 64, 24))

    def test_duplicate(self):
        path = self.manifest('grid.csv', CSV_HEADER +
                             'a.y4m,,hera,x264,fast,2000,,,\n'
                             'b.y4m,,hera,x264,fast,2000.0,,,\n')
        with self.assertRaises(ManifestError) as e:
            load_manifest(path)
        self.assertIn('hera/x264/fast@2000', str(e.exception))

    def test_invalid_rows(self):
        for row in ('a.mp4,,hera,x264,fast,2000,,,\n',
                    'a.y4m,,hera,x264,fast,-5,,,\n',
                    'a.y4m,,hera,x264,fast,lots,,,\n',
                    ',,hera,x264,fast,2000,,,\n',
                    'a.yuv,raw,hera,x264,fast,2000,0,32,\n'):
            path = self.manifest('grid.csv', CSV_HEADER + row)
            with self.assertRaises(ManifestError, msg=row):
                load_manifest(path)

    def test_bad_json(self):
        with self.assertRaises(ManifestError):
            load_manifest(self.manifest('grid.json', '{"streams": 3}'))
        with self.assertRaises(ManifestError):
            load_manifest(self.manifest('grid.json', '[1, 2'))

    def test_missing_file(self):
        with self.assertRaises(OSError):
            load_manifest(os.path.join(self.dir, 'absent.csv'))
