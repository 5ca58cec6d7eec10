import { configureBase } from './api.js';
import { clear, el } from './dom.js';
import { mountDetail } from './detail.js';
import { mountGallery } from './gallery.js';
import { mountSearch } from './search.js';

/**
 * Hash router: #/ gallery, #/example/{id} detail, #/search console.
 * The service origin defaults to same-origin and can be overridden
 * with ?service=http://host:port for running against a dev server.
 */
export function route(container: HTMLElement, hash: string): void {
  const path = hash.replace(/^#/, '') || '/';
  const example = /^\/example\/([0-9a-f]+)$/.exec(path);
  clear(container);
  if (example) {
    mountDetail(container, example[1]);
  } else if (path === '/search') {
    mountSearch(container);
  } else {
    mountGallery(container);
  }
}

function navBar(): HTMLElement {
  return el(
    'nav',
    { class: 'top-nav' },
    el('a', { href: '#/' }, 'Gallery'),
    el('a', { href: '#/search' }, 'Search')
  );
}

export function boot(root: HTMLElement): void {
  const service = new URLSearchParams(location.search).get('service');
  if (service) configureBase(service);

  const main = el('main', { id: 'view' });
  root.append(navBar(), main);
  window.addEventListener('hashchange', () => route(main, location.hash));
  route(main, location.hash);
}

const appRoot = document.getElementById('app');
if (appRoot) boot(appRoot);
